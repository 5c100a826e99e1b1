#include "privlqg/intermittent.h"

#include <stdexcept>

#include "privlqg/errors.h"

namespace privlqg {

PeriodicScheme::PeriodicScheme(int period) : period_(period) {
  if (period < 1) {
    throw std::invalid_argument("transmission period must be >= 1, got " +
                                std::to_string(period));
  }
}

bool PeriodicScheme::Transmits(long long k) const {
  if (k < 1) return false;
  return (k - 1) % period_ == 0;
}

int Gamma(const PeriodicScheme& scheme, long long k) {
  return scheme.Transmits(k) ? 1 : 0;
}

Matrix PeriodicFixedPoint(const SystemModel& model, int period,
                          const Matrix& start,
                          const FixedPointOptions& options) {
  const PeriodicScheme scheme(period);
  if (!IsDetectable(model.C, MatrixPower(model.A, scheme.period()))) {
    throw DetectabilityViolation(period);
  }
  auto map = [&model, period](const Matrix& X) {
    return RiccatiStep(LyapunovPower(X, model, period - 1), model);
  };
  return FixedPoint(map, start, options).value;
}

Matrix PeriodicFixedPoint(const SystemModel& model, const SteadyState& steady,
                          int period, const FixedPointOptions& options) {
  // With T = 1 the periodic map is g itself, whose fixed point is P̄.
  if (period == 1) return steady.P_bar;
  return PeriodicFixedPoint(model, period, steady.P_bar, options);
}

std::vector<Matrix> CovarianceCycle(const SystemModel& model,
                                    const Matrix& P_tilde, int period) {
  const PeriodicScheme scheme(period);
  std::vector<Matrix> cycle;
  cycle.reserve(scheme.period());
  cycle.push_back(P_tilde);
  for (int i = 1; i < scheme.period(); ++i) {
    cycle.push_back(LyapunovStep(cycle.back(), model));
  }
  return cycle;
}

namespace {

Matrix CycleAverage(const std::vector<Matrix>& cycle) {
  Matrix sum = Matrix::Zero(cycle.front().rows(), cycle.front().cols());
  for (const auto& X : cycle) sum += X;
  return sum / static_cast<double>(cycle.size());
}

}  // namespace

PeriodicAnalysis AnalyzePeriod(const SystemModel& model,
                               const SteadyState& steady, int period,
                               const FixedPointOptions& options) {
  PeriodicAnalysis analysis;
  analysis.period = period;
  analysis.P_tilde = PeriodicFixedPoint(model, steady, period, options);
  analysis.cycle = CovarianceCycle(model, analysis.P_tilde, period);
  analysis.P_sup = analysis.cycle.back();

  const Matrix average = CycleAverage(analysis.cycle);
  analysis.Q_privacy = Symmetrize(average - steady.P_bar);
  analysis.Q_lqg = (steady.Phi * analysis.Q_privacy).trace();
  analysis.O_star =
      (steady.S * model.Q).trace() + (steady.Phi * average).trace();

  auto prior_map = [&model, period](const Matrix& X) {
    return LyapunovPower(MeasurementUpdate(X, model), model, period);
  };
  analysis.Sigma_bar =
      FixedPoint(prior_map, LyapunovStep(steady.P_bar, model), options).value;
  return analysis;
}

Matrix PrivacyMetric(const SystemModel& model, const SteadyState& steady,
                     int period, const FixedPointOptions& options) {
  const Matrix P_tilde = PeriodicFixedPoint(model, steady, period, options);
  return Symmetrize(CycleAverage(CovarianceCycle(model, P_tilde, period)) -
                    steady.P_bar);
}

double DegradedCost(const SystemModel& model, const SteadyState& steady,
                    int period, const FixedPointOptions& options) {
  const Matrix P_tilde = PeriodicFixedPoint(model, steady, period, options);
  const Matrix average = CycleAverage(CovarianceCycle(model, P_tilde, period));
  return (steady.S * model.Q).trace() + (steady.Phi * average).trace();
}

double LqgLoss(const SystemModel& model, const SteadyState& steady, int period,
               const FixedPointOptions& options) {
  return (steady.Phi * PrivacyMetric(model, steady, period, options)).trace();
}

}  // namespace privlqg
