#include "privlqg/linalg.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace privlqg {

Matrix Symmetrize(const Matrix& X) { return 0.5 * (X + X.transpose()); }

double MinEigenvalue(const Matrix& X) {
  if (X.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(Symmetrize(X),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

namespace {

template <typename Derived>
int RankFromSingularValues(const Eigen::MatrixBase<Derived>& sv,
                           double rank_tol) {
  if (sv.size() == 0) return 0;
  const double largest = sv.maxCoeff();
  if (largest <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > rank_tol * largest) ++rank;
  }
  return rank;
}

}  // namespace

int NumericalRank(const Matrix& M, double rank_tol) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(M);
  return RankFromSingularValues(svd.singularValues(), rank_tol);
}

int NumericalRank(const Eigen::MatrixXcd& M, double rank_tol) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  return RankFromSingularValues(svd.singularValues(), rank_tol);
}

Matrix PsdFactor(const Matrix& X, double clamp) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(Symmetrize(X));
  Vector roots = solver.eigenvalues().unaryExpr(
      [clamp](double v) { return v < clamp ? 0.0 : std::sqrt(v); });
  return solver.eigenvectors() * roots.asDiagonal();
}

double SpectralRadius(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  Eigen::EigenSolver<Matrix> solver(M, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Matrix MatrixPower(const Matrix& X, int k) {
  Matrix result = Matrix::Identity(X.rows(), X.cols());
  Matrix base = X;
  // square-and-multiply
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

}  // namespace privlqg
