#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "privlqg/model.h"
#include "privlqg/riccati.h"

namespace privlqg {

/// Slack added to α when testing Q_lqg(T) <= α.
inline constexpr double kFeasibilitySlack = 1e-12;

struct SweepEntry {
  int period = 1;
  double tr_Q_privacy = 0.0;
  double Q_lqg = 0.0;
  double O_star = 0.0;
  double J_star = 0.0;
};

enum class SearchMethod { kDichotomy, kLinearScan };

std::string_view ToString(SearchMethod method);

struct TradeoffResult {
  std::optional<int> T_star;  // nullopt when no period is feasible
  std::vector<SweepEntry> sweep;
  double alpha = 0.0;
  SearchMethod method = SearchMethod::kDichotomy;
  bool monotone_verified = false;
};

/// One entry per T in [t_min, t_max]. Throws DetectabilityViolation naming
/// the first offending period.
std::vector<SweepEntry> Sweep(const SystemModel& model,
                              const SteadyState& steady, int t_min, int t_max,
                              const FixedPointOptions& options = {});

/// True iff the Q_lqg column is non-decreasing.
bool VerifyMonotone(std::span<const SweepEntry> sweep);

/// Bisection for the largest feasible T. The sweep supplies Q_lqg(T) and
/// must pass VerifyMonotone, else MonotonicityViolation. alpha must be > 0.
TradeoffResult DichotomySearch(std::span<const SweepEntry> sweep, double alpha);
TradeoffResult DichotomySearch(const SystemModel& model,
                               const SteadyState& steady, int t_min, int t_max,
                               double alpha,
                               const FixedPointOptions& options = {});

/// Exhaustive scan: the T with largest tr(Q_privacy) among feasible ones,
/// ties toward smaller T. No monotonicity assumption.
TradeoffResult LinearScan(std::span<const SweepEntry> sweep, double alpha);
TradeoffResult LinearScan(const SystemModel& model, const SteadyState& steady,
                          int t_min, int t_max, double alpha,
                          const FixedPointOptions& options = {});

}  // namespace privlqg
