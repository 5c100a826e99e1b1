#include "privlqg/sim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>

#include "privlqg/intermittent.h"

namespace privlqg {

std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t TrialSeed(std::uint64_t seed, std::uint64_t trial) {
  return Mix64(seed ^ Mix64(trial + 0x9E3779B97F4A7C15ULL));
}

NormalSampler::NormalSampler(std::uint64_t seed) : engine_(seed) {}

double NormalSampler::Uniform() {
  // 53-bit uniform on [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NormalSampler::Next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = 1.0 - Uniform();  // (0, 1]
  const double u2 = Uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

Vector NormalSampler::Sample(const Matrix& factor) {
  Vector z(factor.cols());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = Next();
  return factor * z;
}

namespace {

constexpr double kSamplingClamp = 1e-14;

// One Kalman step on (estimate, covariance) given the a-priori pair.
struct FilterState {
  Vector estimate;
  Matrix covariance;
};

FilterState JosephUpdate(const Vector& prior, const Matrix& prior_cov,
                         const Vector& y, const SystemModel& model) {
  const Matrix innovation_cov =
      Symmetrize(model.C * prior_cov * model.C.transpose() + model.R);
  const Matrix K = Eigen::LLT<Matrix>(innovation_cov)
                       .solve(model.C * prior_cov)
                       .transpose();
  const Matrix I_KC =
      Matrix::Identity(prior.size(), prior.size()) - K * model.C;
  Matrix cov = Symmetrize(I_KC * prior_cov * I_KC.transpose() +
                          K * model.R * K.transpose());
  return {prior + K * (y - model.C * prior), std::move(cov)};
}

void RequirePeriodAndHorizon(int period, int horizon) {
  if (period < 1) throw std::invalid_argument("period must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
}

}  // namespace

SimulationTrace Simulate(const SystemModel& model, const SteadyState& steady,
                         int period, int horizon, std::uint64_t seed) {
  RequirePeriodAndHorizon(period, horizon);
  const PeriodicScheme scheme(period);
  const int n = model.states();
  const int m = model.inputs();
  const int q = model.outputs();

  const Matrix process_factor = PsdFactor(model.Q, kSamplingClamp);
  const Matrix sensor_factor = PsdFactor(model.R, kSamplingClamp);
  const Matrix initial_factor = PsdFactor(model.x0_cov, kSamplingClamp);
  const Matrix prediction_cov_shift = model.Q;

  SimulationTrace trace;
  trace.seed = seed;
  trace.period = period;
  trace.horizon = horizon;
  trace.x.resize(n, horizon + 1);
  trace.y.resize(q, horizon);
  trace.gamma.assign(horizon, 0);
  trace.x_prior.resize(n, horizon);
  trace.x_hat.resize(n, horizon);
  trace.x_hat_full.resize(n, horizon);
  trace.u.resize(m, horizon);
  trace.stage_cost.resize(horizon);

  NormalSampler sampler(seed);
  trace.x.col(0) = model.x0_mean + sampler.Sample(initial_factor);

  FilterState server{model.x0_mean, model.x0_cov};
  FilterState full{model.x0_mean, model.x0_cov};
  Vector last_input = Vector::Zero(m);

  for (int k = 0; k < horizon; ++k) {
    const Vector x = trace.x.col(k);
    const Vector y = model.C * x + sampler.Sample(sensor_factor);
    trace.y.col(k) = y;

    if (k == 0) {
      trace.x_prior.col(k) = server.estimate;
    } else {
      const Vector drive = model.B * last_input;
      const Vector prior = model.A * server.estimate + drive;
      const Matrix prior_cov = Symmetrize(
          model.A * server.covariance * model.A.transpose() +
          prediction_cov_shift);
      trace.x_prior.col(k) = prior;
      if (scheme.Transmits(k)) {
        trace.gamma[k] = 1;
        server = JosephUpdate(prior, prior_cov, y, model);
      } else {
        server = {prior, prior_cov};
      }

      const Vector full_prior = model.A * full.estimate + drive;
      const Matrix full_prior_cov = Symmetrize(
          model.A * full.covariance * model.A.transpose() +
          prediction_cov_shift);
      full = JosephUpdate(full_prior, full_prior_cov, y, model);
    }
    trace.x_hat.col(k) = server.estimate;
    trace.x_hat_full.col(k) = full.estimate;

    const Vector u = steady.L * server.estimate;
    trace.u.col(k) = u;
    trace.stage_cost[k] = x.dot(model.W * x) + u.dot(model.U * u);
    last_input = u;

    trace.x.col(k + 1) =
        model.A * x + model.B * u + sampler.Sample(process_factor);
  }
  return trace;
}

int DefaultBurnIn(int period) { return std::max(100 * period, 1000); }

namespace {

struct CostAccumulator {
  double total = 0.0;
  long long samples = 0;
  std::vector<double> trial_means;

  void AddTrial(const SimulationTrace& trace, int burn_in) {
    double sum = 0.0;
    long long count = 0;
    for (int k = burn_in; k < trace.horizon; ++k) {
      sum += trace.stage_cost[k];
      ++count;
    }
    if (count == 0) return;
    total += sum;
    samples += count;
    trial_means.push_back(sum / static_cast<double>(count));
  }

  EmpiricalCost Finish() const {
    EmpiricalCost cost;
    cost.samples = samples;
    cost.trials = static_cast<int>(trial_means.size());
    if (samples == 0) {
      cost.mean = std::nan("");
      cost.standard_error = std::nan("");
      return cost;
    }
    cost.mean = total / static_cast<double>(samples);
    if (trial_means.size() < 2) {
      cost.standard_error = std::nan("");
      return cost;
    }
    double mean_of_means = 0.0;
    for (double v : trial_means) mean_of_means += v;
    mean_of_means /= static_cast<double>(trial_means.size());
    double var = 0.0;
    for (double v : trial_means) var += (v - mean_of_means) * (v - mean_of_means);
    var /= static_cast<double>(trial_means.size() - 1);
    cost.standard_error =
        std::sqrt(var / static_cast<double>(trial_means.size()));
    return cost;
  }
};

}  // namespace

EmpiricalCost EmpiricalAverageCost(std::span<const SimulationTrace> traces,
                                   int burn_in) {
  if (burn_in < 0) throw std::invalid_argument("burn_in must be >= 0");
  CostAccumulator acc;
  for (const auto& trace : traces) acc.AddTrial(trace, burn_in);
  return acc.Finish();
}

MonteCarloSummary RunMonteCarlo(const SystemModel& model,
                                const SteadyState& steady,
                                const MonteCarloOptions& options) {
  const int period = options.period;
  RequirePeriodAndHorizon(period, options.horizon);
  const int burn_in =
      options.burn_in < 0 ? DefaultBurnIn(period) : options.burn_in;
  if (options.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (burn_in < 100 * period) {
    throw std::invalid_argument("burn_in must cover at least 100 periods");
  }
  if (options.horizon <= burn_in) {
    throw std::invalid_argument("horizon " + std::to_string(options.horizon) +
                                " does not exceed burn_in " +
                                std::to_string(burn_in));
  }

  const int n = model.states();
  std::vector<Vector> sum_e(period, Vector::Zero(n));
  std::vector<Matrix> sum_ee(period, Matrix::Zero(n, n));
  std::vector<long long> counts(period, 0);
  CostAccumulator cost;

  for (int trial = 0; trial < options.trials; ++trial) {
    const SimulationTrace trace =
        Simulate(model, steady, period, options.horizon,
                 TrialSeed(options.seed, static_cast<std::uint64_t>(trial)));
    for (int k = std::max(burn_in, 1); k < options.horizon; ++k) {
      const int offset = (k - 1) % period;
      const Vector e = trace.x.col(k) - trace.x_hat.col(k);
      sum_e[offset] += e;
      sum_ee[offset].noalias() += e * e.transpose();
      ++counts[offset];
    }
    cost.AddTrial(trace, burn_in);
  }

  MonteCarloSummary summary;
  summary.offset_samples = counts;
  for (int i = 0; i < period; ++i) {
    const double c = static_cast<double>(counts[i]);
    if (counts[i] < 2) {
      summary.offset_cov.push_back(Matrix::Constant(n, n, std::nan("")));
      continue;
    }
    summary.offset_cov.push_back(Symmetrize(
        (sum_ee[i] - sum_e[i] * sum_e[i].transpose() / c) / (c - 1.0)));
  }
  summary.cost = cost.Finish();
  return summary;
}

std::vector<Matrix> EmpiricalCovarianceByOffset(
    const SystemModel& model, const SteadyState& steady,
    const MonteCarloOptions& options) {
  if (options.trials < 2) throw std::invalid_argument("trials must be >= 2");
  return RunMonteCarlo(model, steady, options).offset_cov;
}

std::vector<Matrix> ServerCovarianceSequence(const SystemModel& model,
                                             int period, const Matrix& start,
                                             int steps) {
  const PeriodicScheme scheme(period);
  std::vector<Matrix> sequence;
  if (steps <= 0) return sequence;
  sequence.reserve(steps);
  sequence.push_back(start);
  for (int k = 1; k < steps; ++k) {
    Matrix prior = LyapunovStep(sequence.back(), model);
    sequence.push_back(scheme.Transmits(k) ? MeasurementUpdate(prior, model)
                                           : std::move(prior));
  }
  return sequence;
}

FiniteHorizonCost ComputeFiniteHorizonCost(const SystemModel& model,
                                           const SteadyState& steady,
                                           int period, int horizon) {
  RequirePeriodAndHorizon(period, horizon);
  // P_k for k = 0..N-1; equals P_k⁻ at steps without a transmission.
  const auto covariances =
      ServerCovarianceSequence(model, period, steady.P_bar, horizon);

  FiniteHorizonCost result;
  result.horizon = horizon;
  result.S_seq.resize(horizon + 1);
  result.Phi_seq.resize(horizon);
  result.S_seq[horizon] = model.W;
  double r = 0.0;
  double t = 0.0;
  for (int k = horizon - 1; k >= 0; --k) {
    const Matrix& S_next = result.S_seq[k + 1];
    result.Phi_seq[k] = ControlPhi(S_next, model);
    result.S_seq[k] = Symmetrize(model.A.transpose() * S_next * model.A +
                                 model.W - result.Phi_seq[k]);
    r += (S_next * model.Q).trace();
    t += (result.Phi_seq[k] * covariances[k]).trace();
  }
  const Matrix& S0 = result.S_seq[0];
  result.initial_term =
      model.x0_mean.dot(S0 * model.x0_mean) + (S0 * model.x0_cov).trace();
  result.r0 = r;
  result.t0 = t;
  result.J_0N = result.initial_term + r + t;
  return result;
}

}  // namespace privlqg
