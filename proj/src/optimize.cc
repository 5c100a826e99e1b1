#include "privlqg/optimize.h"

#include <stdexcept>
#include <string>

#include "privlqg/errors.h"
#include "privlqg/intermittent.h"

namespace privlqg {
namespace {

bool Feasible(const SweepEntry& entry, double alpha) {
  return entry.Q_lqg <= alpha + kFeasibilitySlack;
}

void RequireContiguous(std::span<const SweepEntry> sweep) {
  if (sweep.empty()) throw std::invalid_argument("empty sweep");
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    if (sweep[i].period != sweep[i - 1].period + 1) {
      throw std::invalid_argument("sweep periods must be ascending without gaps");
    }
  }
}

}  // namespace

std::string_view ToString(SearchMethod method) {
  switch (method) {
    case SearchMethod::kDichotomy:
      return "dichotomy";
    case SearchMethod::kLinearScan:
      return "linear_scan";
  }
  return "unknown";
}

std::vector<SweepEntry> Sweep(const SystemModel& model,
                              const SteadyState& steady, int t_min, int t_max,
                              const FixedPointOptions& options) {
  if (t_min < 1 || t_max < t_min) {
    throw std::invalid_argument("sweep range must satisfy 1 <= t_min <= t_max");
  }
  std::vector<SweepEntry> sweep;
  sweep.reserve(t_max - t_min + 1);
  for (int T = t_min; T <= t_max; ++T) {
    const PeriodicAnalysis analysis = AnalyzePeriod(model, steady, T, options);
    sweep.push_back({T, analysis.Q_privacy.trace(), analysis.Q_lqg,
                     analysis.O_star, steady.J_star});
  }
  return sweep;
}

bool VerifyMonotone(std::span<const SweepEntry> sweep) {
  if (sweep.empty()) throw std::invalid_argument("empty sweep");
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    if (sweep[i].Q_lqg < sweep[i - 1].Q_lqg) return false;
  }
  return true;
}

TradeoffResult DichotomySearch(std::span<const SweepEntry> sweep,
                               double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  RequireContiguous(sweep);
  if (!VerifyMonotone(sweep)) {
    throw MonotonicityViolation(
        "Q_lqg is not non-decreasing over T in [" +
        std::to_string(sweep.front().period) + ", " +
        std::to_string(sweep.back().period) + "]; use the linear scan");
  }
  TradeoffResult result;
  result.sweep.assign(sweep.begin(), sweep.end());
  result.alpha = alpha;
  result.method = SearchMethod::kDichotomy;
  result.monotone_verified = true;

  const int base = sweep.front().period;
  int left = base;
  int right = sweep.back().period;
  while (left <= right) {
    const int mid = left + (right - left) / 2;
    if (Feasible(sweep[mid - base], alpha)) {
      result.T_star = mid;
      left = mid + 1;
    } else {
      right = mid - 1;
    }
  }
  return result;
}

TradeoffResult DichotomySearch(const SystemModel& model,
                               const SteadyState& steady, int t_min, int t_max,
                               double alpha, const FixedPointOptions& options) {
  const auto sweep = Sweep(model, steady, t_min, t_max, options);
  return DichotomySearch(sweep, alpha);
}

TradeoffResult LinearScan(std::span<const SweepEntry> sweep, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be non-negative");
  RequireContiguous(sweep);
  TradeoffResult result;
  result.sweep.assign(sweep.begin(), sweep.end());
  result.alpha = alpha;
  result.method = SearchMethod::kLinearScan;
  result.monotone_verified = VerifyMonotone(sweep);

  const SweepEntry* best = nullptr;
  for (const auto& entry : sweep) {
    if (!Feasible(entry, alpha)) continue;
    if (best == nullptr || entry.tr_Q_privacy > best->tr_Q_privacy) {
      best = &entry;
    }
  }
  if (best != nullptr) result.T_star = best->period;
  return result;
}

TradeoffResult LinearScan(const SystemModel& model, const SteadyState& steady,
                          int t_min, int t_max, double alpha,
                          const FixedPointOptions& options) {
  const auto sweep = Sweep(model, steady, t_min, t_max, options);
  return LinearScan(sweep, alpha);
}

}  // namespace privlqg
