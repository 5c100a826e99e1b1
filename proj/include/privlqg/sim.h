#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "privlqg/linalg.h"
#include "privlqg/model.h"
#include "privlqg/riccati.h"

namespace privlqg {

/// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t z);

/// Seed for trial i: Mix64(seed ^ Mix64(i + 0x9E3779B97F4A7C15)).
std::uint64_t TrialSeed(std::uint64_t seed, std::uint64_t trial);

// Standard normal variates from a std::mt19937_64 stream via Box-Muller on
// 53-bit uniforms; the second variate of each pair is cached.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed);

  double Next();

  /// factor * z with z ~ N(0, I); factor comes from PsdFactor.
  Vector Sample(const Matrix& factor);

 private:
  double Uniform();

  std::mt19937_64 engine_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

// One closed-loop realization. Step k runs from 0 to N-1. Step 0 has no
// transmitted measurement (gamma[0] = 0); both filters start from the true
// prior x̂_{0|0} = x0_mean, P_{0|0} = x0_cov. Column k of each matrix is step k.
struct SimulationTrace {
  std::uint64_t seed = 0;
  int period = 1;
  int horizon = 0;
  Matrix x;           // n x (N+1)
  Matrix y;           // q x N
  std::vector<std::uint8_t> gamma;
  Matrix x_prior;     // server's a-priori estimate x̂⁻_k
  Matrix x_hat;       // server's a-posteriori estimate under the scheme
  Matrix x_hat_full;  // Kalman filter that receives every measurement
  Matrix u;           // m x N, u_k = L x̂_k
  Vector stage_cost;  // x_k' W x_k + u_k' U u_k
};

/// Deterministic given (model, steady, period, horizon, seed).
SimulationTrace Simulate(const SystemModel& model, const SteadyState& steady,
                         int period, int horizon, std::uint64_t seed);

/// max(100 T, 1000).
int DefaultBurnIn(int period);

struct EmpiricalCost {
  double mean = 0.0;
  // Standard deviation of per-trial means over sqrt(trials); NaN with fewer
  // than two trials.
  double standard_error = 0.0;
  long long samples = 0;
  int trials = 0;
};

/// Mean stage cost over steps k >= burn_in of every trace.
EmpiricalCost EmpiricalAverageCost(std::span<const SimulationTrace> traces,
                                   int burn_in);

struct MonteCarloOptions {
  int period = 1;
  int horizon = 11000;  // steps per trial, burn-in included
  int trials = 100;
  std::uint64_t seed = 0;
  int burn_in = -1;     // < 0 selects DefaultBurnIn(period)
};

struct MonteCarloSummary {
  // offset_cov[i]: sample covariance of x_k - x̂_k over steps k >= burn_in with
  // k ≡ 1 + i (mod T).
  std::vector<Matrix> offset_cov;
  std::vector<long long> offset_samples;
  EmpiricalCost cost;
};

/// Runs trials one at a time with TrialSeed(seed, i) and merges them in trial
/// order. Throws std::invalid_argument if trials < 1, burn_in < 100 T, or
/// horizon <= burn_in.
MonteCarloSummary RunMonteCarlo(const SystemModel& model,
                                const SteadyState& steady,
                                const MonteCarloOptions& options);

/// Requires trials >= 2.
std::vector<Matrix> EmpiricalCovarianceByOffset(
    const SystemModel& model, const SteadyState& steady,
    const MonteCarloOptions& options);

/// Server-side P_{k|k} for k = 0..steps-1 from the deterministic recursion
/// with P_{0|0} = start.
std::vector<Matrix> ServerCovarianceSequence(const SystemModel& model,
                                             int period, const Matrix& start,
                                             int steps);

struct FiniteHorizonCost {
  int horizon = 0;
  std::vector<Matrix> S_seq;    // S_0..S_N
  std::vector<Matrix> Phi_seq;  // Φ_0..Φ_{N-1}
  double initial_term = 0.0;    // E(x_0' S_0 x_0)
  double r0 = 0.0;
  double t0 = 0.0;
  double J_0N = 0.0;
};

/// Backward dynamic-programming cost J_{0:N} under the periodic scheme,
/// with the server covariance started at P_0 = P̄.
FiniteHorizonCost ComputeFiniteHorizonCost(const SystemModel& model,
                                           const SteadyState& steady,
                                           int period, int horizon);

}  // namespace privlqg
