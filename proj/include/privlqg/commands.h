#pragma once

#include <filesystem>
#include <iosfwd>

#include "privlqg/config.h"

namespace privlqg {

/// Prints the check table; returns 0 iff every check passed, else 1.
int CmdValidate(const RunConfig& config, std::ostream& out);

/// Writes sweep.csv (T, tr_Q_privacy, Q_lqg, O_star, J_star).
int CmdSweep(const RunConfig& config, std::ostream& out);

/// Writes optimal_T.csv (alpha, T_star, Q_lqg_at_T_star, method). Throws
/// MonotonicityViolation when Q_lqg is not monotone and `force_scan` is false.
int CmdOptimize(const RunConfig& config, bool force_scan, std::ostream& out);

/// Writes trace.csv and empirical.csv for T = config.sim_period.
int CmdSimulate(const RunConfig& config, std::ostream& out);

/// Runs sweep, optimize and simulate on ExampleConfig() into `output_dir`.
int CmdReproduceExample(const std::filesystem::path& output_dir,
                        std::ostream& out);

}  // namespace privlqg
