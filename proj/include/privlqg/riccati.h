#pragma once

#include <functional>

#include "privlqg/linalg.h"
#include "privlqg/model.h"

namespace privlqg {

inline constexpr double kDefaultFixedPointTol = 1e-12;
inline constexpr int kDefaultMaxIterations = 100000;

struct FixedPointOptions {
  double tol = kDefaultFixedPointTol;
  int max_iterations = kDefaultMaxIterations;
};

/// h(X) = A X A^T + Q.
Matrix LyapunovStep(const Matrix& X, const SystemModel& model);

/// g̃(X) = X - X C^T (C X C^T + R)^{-1} C X.
Matrix MeasurementUpdate(const Matrix& X, const SystemModel& model);

/// g(X) = g̃(h(X)): one predict-then-update step of the filter covariance.
Matrix RiccatiStep(const Matrix& X, const SystemModel& model);

/// h applied `times` times.
Matrix LyapunovPower(const Matrix& X, const SystemModel& model, int times);

using MatrixMap = std::function<Matrix(const Matrix&)>;

struct FixedPointResult {
  Matrix value;
  int iterations = 0;
  double residual = 0.0;
};

// Plain successive substitution X <- map(X). Stops at the first iterate whose
// step satisfies ‖map(X) - X‖_F <= tol (1 + ‖map(X)‖_F) and returns map(X).
// Throws NonConvergence when max_iterations is exhausted or the iterates stop
// being finite.
FixedPointResult FixedPoint(const MatrixMap& map, const Matrix& start,
                            const FixedPointOptions& options = {});

struct SteadyFilter {
  Matrix P_bar;  // a-posteriori covariance, P̄ = g(P̄)
  Matrix K;      // gain at the a-priori covariance h(P̄)
  int iterations = 0;
  double residual = 0.0;
};

/// Solves P̄ = g(P̄) starting from Q.
SteadyFilter ComputeSteadyFilter(const SystemModel& model,
                                 const FixedPointOptions& options = {});
SteadyFilter ComputeSteadyFilter(const SystemModel& model, const Matrix& start,
                                 const FixedPointOptions& options = {});

struct SteadyController {
  Matrix S;
  Matrix L;    // u = L x̂
  Matrix Phi;  // A^T S B (B^T S B + U)^{-1} B^T S A
  int iterations = 0;
  double residual = 0.0;
};

/// One backward step of the control Riccati recursion, returning S_k from S_{k+1}.
Matrix ControlRiccatiStep(const Matrix& S_next, const SystemModel& model);

/// Φ = A^T S B (B^T S B + U)^{-1} B^T S A for a given S.
Matrix ControlPhi(const Matrix& S, const SystemModel& model);

/// L = -(B^T S B + U)^{-1} B^T S A for a given S.
Matrix FeedbackGain(const Matrix& S, const SystemModel& model);

/// Solves S = A^T S A + W - Φ(S) by backward iteration from W.
SteadyController ComputeSteadyController(const SystemModel& model,
                                         const FixedPointOptions& options = {});

struct SteadyState {
  Matrix P_bar;
  Matrix K;
  Matrix S;
  Matrix L;
  Matrix Phi;
  double J_star = 0.0;
};

SteadyState ComputeSteadyState(const SystemModel& model,
                               const FixedPointOptions& options = {});

/// J* = tr(S Q) + tr(Φ P̄).
double BaselineCost(const SystemModel& model, const SteadyState& steady);

}  // namespace privlqg
