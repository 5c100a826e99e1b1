#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "privlqg/model.h"

namespace privlqg {

/// Malformed or incomplete configuration; the message names the key or the
/// line of the syntax error.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  SystemModel model;
  int t_min = 1;
  int t_max = 50;
  std::vector<double> alphas;
  int sim_period = 3;
  int horizon = 11000;  // Monte-Carlo steps per trial, burn-in included
  int trials = 100;
  std::uint64_t seed = 2024;
  int burn_in = -1;  // < 0 selects the default max(100 T, 1000)
  int trace_horizon = 200;
  std::filesystem::path output_dir = "out";
  double fixed_point_tol = 1e-12;
  double rank_tol = 1e-9;
};

/// Parses the JSON configuration. Required keys: A, B, C, Q, R, W, U.
/// Matrices are arrays of rows; a bare number is read as a 1x1 matrix.
RunConfig ParseConfig(const std::string& text);
RunConfig LoadConfig(const std::filesystem::path& path);

/// The example system with T in [1, 10], α from 7 to 27 in steps of 0.5 and
/// a 100-trial simulation at T = 3.
RunConfig ExampleConfig();

/// Canonical JSON text of the effective configuration.
std::string CanonicalConfig(const RunConfig& config);

/// FNV-1a 64 of CanonicalConfig, as 16 hex digits.
std::string ConfigHash(const RunConfig& config);

/// start, start + step, ... up to stop (inclusive within 1e-9 step).
std::vector<double> AlphaGrid(double start, double stop, double step);

}  // namespace privlqg
