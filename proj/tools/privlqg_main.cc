// privlqg: analyses, sweeps, period optimization and Monte-Carlo checks for
// periodic intermittent transmission in user-server LQG control.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "privlqg/commands.h"
#include "privlqg/config.h"
#include "privlqg/errors.h"

namespace {

struct Overrides {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> t_min;
  std::optional<int> t_max;
  std::vector<double> alphas;
  std::optional<int> trials;
  std::optional<int> horizon;
  std::optional<int> period;
  bool scan = false;
};

void AddCommonFlags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--t-min", o.t_min, "smallest period");
  cmd->add_option("--t-max", o.t_max, "largest period");
  cmd->add_option("--alpha", o.alphas, "loss thresholds (comma separated)")
      ->delimiter(',');
  cmd->add_option("--trials", o.trials, "Monte-Carlo trials");
  cmd->add_option("--horizon", o.horizon, "steps per trial incl. burn-in");
  cmd->add_option("--period", o.period, "period T for simulate");
}

privlqg::RunConfig Resolve(const Overrides& o) {
  privlqg::RunConfig config = privlqg::LoadConfig(o.config_path);
  if (!o.out_dir.empty()) config.output_dir = o.out_dir;
  if (o.seed) config.seed = *o.seed;
  if (o.t_min) config.t_min = *o.t_min;
  if (o.t_max) config.t_max = *o.t_max;
  if (!o.alphas.empty()) config.alphas = o.alphas;
  if (o.trials) config.trials = *o.trials;
  if (o.horizon) config.horizon = *o.horizon;
  if (o.period) config.sim_period = *o.period;
  if (config.t_min < 1 || config.t_max < config.t_min) {
    throw privlqg::ConfigError("need 1 <= t-min <= t-max");
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy/performance analysis of periodic intermittent "
               "transmission for cooperative LQG control"};
  app.require_subcommand(1);

  Overrides o;
  std::string reproduce_out = "out";

  auto* validate = app.add_subcommand("validate", "check model assumptions");
  AddCommonFlags(validate, o);
  auto* sweep = app.add_subcommand("sweep", "privacy and loss over T (sweep.csv)");
  AddCommonFlags(sweep, o);
  auto* optimize =
      app.add_subcommand("optimize", "optimal T per alpha (optimal_T.csv)");
  AddCommonFlags(optimize, o);
  optimize->add_flag("--scan", o.scan, "use the exhaustive scan");
  auto* simulate = app.add_subcommand(
      "simulate", "closed-loop Monte-Carlo (trace.csv, empirical.csv)");
  AddCommonFlags(simulate, o);
  auto* reproduce = app.add_subcommand(
      "reproduce-example", "all four CSVs for the built-in example system");
  reproduce->add_option("--out", reproduce_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (reproduce->parsed()) {
      return privlqg::CmdReproduceExample(reproduce_out, std::cout);
    }
    const privlqg::RunConfig config = Resolve(o);
    if (validate->parsed()) return privlqg::CmdValidate(config, std::cout);
    if (sweep->parsed()) return privlqg::CmdSweep(config, std::cout);
    if (optimize->parsed()) {
      return privlqg::CmdOptimize(config, o.scan, std::cout);
    }
    if (simulate->parsed()) return privlqg::CmdSimulate(config, std::cout);
  } catch (const privlqg::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
