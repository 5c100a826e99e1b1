#pragma once

#include <stdexcept>
#include <string>

namespace privlqg {

/// Matrix dimensions that do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A fixed-point iteration exhausted its budget or produced non-finite values.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(double residual, int iterations);

  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// (C, A^T) fails the PBH detectability test for the named period.
class DetectabilityViolation : public std::runtime_error {
 public:
  explicit DetectabilityViolation(int period);

  int period() const { return period_; }

 private:
  int period_;
};

/// The loss column of a sweep is not non-decreasing, so bisection is unsound.
class MonotonicityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace privlqg
