#include "privlqg/errors.h"

namespace privlqg {

NonConvergence::NonConvergence(double residual, int iterations)
    : std::runtime_error("fixed-point iteration did not converge after " +
                         std::to_string(iterations) +
                         " iterations (residual " + std::to_string(residual) +
                         ")"),
      residual_(residual),
      iterations_(iterations) {}

DetectabilityViolation::DetectabilityViolation(int period)
    : std::runtime_error("(C, A^T) is not detectable for T = " +
                         std::to_string(period)),
      period_(period) {}

}  // namespace privlqg
