#pragma once

#include <string>
#include <vector>

#include "privlqg/linalg.h"

namespace privlqg {

// Plant x_{k+1} = A x_k + B u_k + w_k, sensor y_k = C x_k + v_k with
// w ~ N(0, Q), v ~ N(0, R), cost weights W (state) and U (input), and
// x_0 ~ N(x0_mean, x0_cov).
struct SystemModel {
  Matrix A;
  Matrix B;
  Matrix C;
  Matrix Q;
  Matrix R;
  Matrix W;
  Matrix U;
  Vector x0_mean;
  Matrix x0_cov;

  int states() const { return static_cast<int>(A.rows()); }
  int inputs() const { return static_cast<int>(B.cols()); }
  int outputs() const { return static_cast<int>(C.rows()); }

  /// Checks dimensions and symmetry, then symmetrizes Q, R, W, U and x0_cov.
  /// Throws DimensionError naming the offending pair, or std::invalid_argument
  /// when a field is asymmetric beyond kSymmetryTol.
  static SystemModel Create(Matrix A, Matrix B, Matrix C, Matrix Q, Matrix R,
                            Matrix W, Matrix U, Vector x0_mean, Matrix x0_cov);
};

/// Throws DimensionError if any pair of fields is inconsistent.
void CheckDimensions(const SystemModel& model);

/// The second-order example system used throughout the tests and the
/// reproduce-example command (x0_mean = 0, x0_cov = I).
SystemModel ExampleModel();

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool overall = false;

  const ValidationCheck* Find(const std::string& name) const;
};

/// Runs the standing-assumption checks: Q ⪰ 0, R ≻ 0, W ⪰ 0, U ≻ 0, Σ₀ ⪰ 0,
/// (A,B) controllable, (C,A) detectable, (A,√Q) stabilizable.
ValidationReport ValidateModel(const SystemModel& model,
                               double rank_tol = kDefaultRankTol);

/// rank [B, AB, ..., A^{n-1}B] == n.
bool IsControllable(const Matrix& A, const Matrix& B,
                    double rank_tol = kDefaultRankTol);

/// PBH: rank [M - λI; C] == n for every eigenvalue |λ| >= 1 of M.
bool IsDetectable(const Matrix& C, const Matrix& M,
                  double rank_tol = kDefaultRankTol);

/// PBH: rank [A - λI, G] == n for every eigenvalue |λ| >= 1 of A.
bool IsStabilizable(const Matrix& A, const Matrix& G,
                    double rank_tol = kDefaultRankTol);

}  // namespace privlqg
