#include "privlqg/commands.h"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "privlqg/csv.h"
#include "privlqg/errors.h"
#include "privlqg/intermittent.h"
#include "privlqg/optimize.h"
#include "privlqg/riccati.h"
#include "privlqg/sim.h"

namespace privlqg {
namespace {

// Offsets with fewer post-burn-in samples than this get a warning row.
constexpr long long kMinOffsetSamples = 10000;

FixedPointOptions FixedPointFrom(const RunConfig& config) {
  FixedPointOptions options;
  options.tol = config.fixed_point_tol;
  return options;
}

std::filesystem::path PrepareOutputDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + dir.string() +
                             ": " + ec.message());
  }
  return dir;
}

std::vector<std::string> Indexed(const std::string& prefix, int count) {
  std::vector<std::string> names;
  for (int i = 1; i <= count; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

void WriteTrace(const std::filesystem::path& path, const RunConfig& config,
                const std::string& hash, const SimulationTrace& trace) {
  const int n = static_cast<int>(trace.x.rows());
  const int m = static_cast<int>(trace.u.rows());
  std::vector<std::string> header = {"k", "gamma"};
  for (const auto& group : {Indexed("x_", n), Indexed("xhat_", n),
                            Indexed("u_", m)}) {
    header.insert(header.end(), group.begin(), group.end());
  }
  header.push_back("stage_cost");
  const auto full = Indexed("xhat_full_", n);
  header.insert(header.end(), full.begin(), full.end());

  CsvWriter csv(path, hash, config.seed, header);
  for (int k = 0; k < trace.horizon; ++k) {
    csv.Add(k).Add(static_cast<int>(trace.gamma[k]));
    for (int i = 0; i < n; ++i) csv.Add(trace.x(i, k));
    for (int i = 0; i < n; ++i) csv.Add(trace.x_hat(i, k));
    for (int i = 0; i < m; ++i) csv.Add(trace.u(i, k));
    csv.Add(trace.stage_cost[k]);
    for (int i = 0; i < n; ++i) csv.Add(trace.x_hat_full(i, k));
    csv.EndRow();
  }
  csv.Close();
}

}  // namespace

int CmdValidate(const RunConfig& config, std::ostream& out) {
  const ValidationReport report = ValidateModel(config.model, config.rank_tol);
  out << std::left;
  for (const auto& check : report.checks) {
    out << std::setw(26) << check.name << ' ' << std::setw(5)
        << (check.passed ? "pass" : "FAIL") << ' ' << check.detail << '\n';
  }
  out << "overall: " << (report.overall ? "pass" : "FAIL") << '\n';
  return report.overall ? 0 : 1;
}

int CmdSweep(const RunConfig& config, std::ostream& out) {
  const auto dir = PrepareOutputDir(config.output_dir);
  const auto options = FixedPointFrom(config);
  const SteadyState steady = ComputeSteadyState(config.model, options);
  const auto sweep =
      Sweep(config.model, steady, config.t_min, config.t_max, options);

  CsvWriter csv(dir / "sweep.csv", ConfigHash(config), config.seed,
                {"T", "tr_Q_privacy", "Q_lqg", "O_star", "J_star"});
  for (const auto& entry : sweep) {
    csv.Add(entry.period)
        .Add(entry.tr_Q_privacy)
        .Add(entry.Q_lqg)
        .Add(entry.O_star)
        .Add(entry.J_star);
    csv.EndRow();
  }
  csv.Close();
  out << "wrote " << (dir / "sweep.csv").string() << " (" << sweep.size()
      << " rows)\n";
  return 0;
}

int CmdOptimize(const RunConfig& config, bool force_scan, std::ostream& out) {
  if (config.alphas.empty()) {
    throw std::invalid_argument("no alpha values given (config key \"alpha\" or --alpha)");
  }
  const auto dir = PrepareOutputDir(config.output_dir);
  const auto options = FixedPointFrom(config);
  const SteadyState steady = ComputeSteadyState(config.model, options);
  const auto sweep =
      Sweep(config.model, steady, config.t_min, config.t_max, options);
  const bool monotone = VerifyMonotone(sweep);
  if (!monotone && !force_scan) {
    throw MonotonicityViolation(
        "Q_lqg is not monotone over the sweep; rerun with --scan");
  }

  CsvWriter csv(dir / "optimal_T.csv", ConfigHash(config), config.seed,
                {"alpha", "T_star", "Q_lqg_at_T_star", "method"});
  for (double alpha : config.alphas) {
    TradeoffResult result = (force_scan || !(alpha > 0.0))
                                ? LinearScan(sweep, alpha)
                                : DichotomySearch(sweep, alpha);
    csv.Add(alpha);
    if (result.T_star) {
      csv.Add(*result.T_star)
          .Add(sweep[*result.T_star - config.t_min].Q_lqg);
    } else {
      csv.Add(std::string_view("infeasible")).Add(std::string_view(""));
    }
    csv.Add(ToString(result.method));
    csv.EndRow();
  }
  csv.Close();
  out << "wrote " << (dir / "optimal_T.csv").string() << " ("
      << config.alphas.size() << " rows)\n";
  return 0;
}

int CmdSimulate(const RunConfig& config, std::ostream& out) {
  const auto dir = PrepareOutputDir(config.output_dir);
  const auto options = FixedPointFrom(config);
  const int period = config.sim_period;
  const SteadyState steady = ComputeSteadyState(config.model, options);
  const PeriodicAnalysis analysis =
      AnalyzePeriod(config.model, steady, period, options);
  const std::string hash = ConfigHash(config);

  const SimulationTrace trace = Simulate(config.model, steady, period,
                                         config.trace_horizon,
                                         TrialSeed(config.seed, 0));
  WriteTrace(dir / "trace.csv", config, hash, trace);

  const int burn_in =
      config.burn_in < 0 ? DefaultBurnIn(period) : config.burn_in;
  std::vector<std::string> warnings;
  MonteCarloSummary summary;
  const bool can_run = burn_in >= 100 * period && config.horizon > burn_in;
  if (can_run) {
    MonteCarloOptions mc;
    mc.period = period;
    mc.horizon = config.horizon;
    mc.trials = config.trials;
    mc.seed = config.seed;
    mc.burn_in = burn_in;
    summary = RunMonteCarlo(config.model, steady, mc);
    if (config.trials < 2) {
      warnings.push_back("trials=1: standard error undefined");
    }
    for (int i = 0; i < period; ++i) {
      if (summary.offset_samples[i] < kMinOffsetSamples) {
        warnings.push_back("offset " + std::to_string(i) + " has only " +
                           std::to_string(summary.offset_samples[i]) +
                           " samples");
      }
    }
  } else {
    warnings.push_back("horizon " + std::to_string(config.horizon) +
                       " leaves no samples after burn-in " +
                       std::to_string(burn_in) + "; Monte-Carlo skipped");
  }

  CsvWriter csv(dir / "empirical.csv", hash, config.seed,
                {"metric", "offset", "entry", "empirical", "analytic",
                 "std_error", "rel_error", "note"});
  const double nan = std::nan("");
  const int n = config.model.states();
  for (int i = 0; i < period; ++i) {
    const Matrix& exact = analysis.cycle[i];
    const Matrix empirical =
        can_run ? summary.offset_cov[i] : Matrix::Constant(n, n, nan);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        csv.Add(std::string_view("covariance"))
            .Add(i)
            .Add(std::to_string(r + 1) + "_" + std::to_string(c + 1))
            .Add(empirical(r, c))
            .Add(exact(r, c))
            .Add(std::string_view(""))
            .Add(std::string_view(""))
            .Add(std::string_view(""));
        csv.EndRow();
      }
    }
    const double rel = (empirical - exact).norm() / exact.norm();
    csv.Add(std::string_view("covariance_frobenius"))
        .Add(i)
        .Add(std::string_view(""))
        .Add(empirical.norm())
        .Add(exact.norm())
        .Add(std::string_view(""))
        .Add(rel)
        .Add(std::string_view(
            can_run ? "samples=" + std::to_string(summary.offset_samples[i])
                    : std::string()));
    csv.EndRow();
  }

  const EmpiricalCost& cost = summary.cost;
  const double mean = can_run ? cost.mean : nan;
  const double se = can_run ? cost.standard_error : nan;
  csv.Add(std::string_view("average_cost"))
      .Add(std::string_view(""))
      .Add(std::string_view(""))
      .Add(mean)
      .Add(analysis.O_star)
      .Add(se)
      .Add(std::abs(mean - analysis.O_star) / analysis.O_star)
      .Add(std::string_view(
          can_run ? "samples=" + std::to_string(cost.samples) +
                        ";trials=" + std::to_string(cost.trials)
                  : std::string()));
  csv.EndRow();
  csv.Add(std::string_view("baseline_cost"))
      .Add(std::string_view(""))
      .Add(std::string_view(""))
      .Add(std::string_view(""))
      .Add(steady.J_star)
      .Add(std::string_view(""))
      .Add(std::string_view(""))
      .Add(std::string_view(""));
  csv.EndRow();
  for (const auto& warning : warnings) {
    csv.Add(std::string_view("warning"));
    for (int i = 0; i < 6; ++i) csv.Add(std::string_view(""));
    csv.Add(warning);
    csv.EndRow();
  }
  csv.Close();

  out << "wrote " << (dir / "trace.csv").string() << " and "
      << (dir / "empirical.csv").string() << '\n';
  if (can_run) {
    out << "T=" << period << " empirical cost " << mean << " ± " << se
        << " vs analytic " << analysis.O_star << '\n';
  }
  for (const auto& warning : warnings) out << "warning: " << warning << '\n';
  return 0;
}

int CmdReproduceExample(const std::filesystem::path& output_dir,
                        std::ostream& out) {
  RunConfig config = ExampleConfig();
  config.output_dir = output_dir;
  CmdSweep(config, out);
  CmdOptimize(config, /*force_scan=*/false, out);
  CmdSimulate(config, out);
  return 0;
}

}  // namespace privlqg
