#pragma once

#include <vector>

#include "privlqg/linalg.h"
#include "privlqg/model.h"
#include "privlqg/riccati.h"

namespace privlqg {

// Periodic transmission: the measurement at step k >= 1 is sent iff
// k = lT + 1 for some integer l >= 0.
class PeriodicScheme {
 public:
  /// Throws std::invalid_argument unless period >= 1.
  explicit PeriodicScheme(int period);

  int period() const { return period_; }

  /// γ_k for k >= 1. Step 0 carries no measurement and reports false.
  bool Transmits(long long k) const;

 private:
  int period_;
};

/// γ_k as 0/1.
int Gamma(const PeriodicScheme& scheme, long long k);

/// Unique PSD solution of P̃ = g(h^{T-1}(P̃)), iterated from `start`.
/// Throws DetectabilityViolation if (C, A^T) is not detectable.
Matrix PeriodicFixedPoint(const SystemModel& model, int period,
                          const Matrix& start,
                          const FixedPointOptions& options = {});

/// Same, starting from the steady covariance P̄.
Matrix PeriodicFixedPoint(const SystemModel& model, const SteadyState& steady,
                          int period, const FixedPointOptions& options = {});

/// [P̃, h(P̃), ..., h^{T-1}(P̃)]: the server's a-posteriori covariance at
/// offsets 0..T-1 after a transmission.
std::vector<Matrix> CovarianceCycle(const SystemModel& model,
                                    const Matrix& P_tilde, int period);

struct PeriodicAnalysis {
  int period = 1;
  Matrix P_tilde;
  std::vector<Matrix> cycle;
  Matrix P_sup;
  Matrix Q_privacy;
  double O_star = 0.0;
  double Q_lqg = 0.0;
  // A-priori covariance at transmission instants, Σ̄ = h^T(g̃(Σ̄)), solved
  // independently of P̃.
  Matrix Sigma_bar;
};

PeriodicAnalysis AnalyzePeriod(const SystemModel& model,
                               const SteadyState& steady, int period,
                               const FixedPointOptions& options = {});

/// (1/T) Σ h^i(P̃) - P̄.
Matrix PrivacyMetric(const SystemModel& model, const SteadyState& steady,
                     int period, const FixedPointOptions& options = {});

/// tr(S Q) + tr(Φ (1/T) Σ h^i(P̃)).
double DegradedCost(const SystemModel& model, const SteadyState& steady,
                    int period, const FixedPointOptions& options = {});

/// tr(Φ Q_privacy).
double LqgLoss(const SystemModel& model, const SteadyState& steady, int period,
               const FixedPointOptions& options = {});

}  // namespace privlqg
