#pragma once

#include <Eigen/Dense>

namespace privlqg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Singular values at or below this fraction of the largest count as zero.
inline constexpr double kDefaultRankTol = 1e-9;
/// Entry-wise tolerance for accepting a matrix as symmetric.
inline constexpr double kSymmetryTol = 1e-10;

/// (X + X^T) / 2.
Matrix Symmetrize(const Matrix& X);

/// Smallest eigenvalue of the symmetric part of X.
double MinEigenvalue(const Matrix& X);

/// Numerical rank by singular-value thresholding: sigma_i > rank_tol * sigma_max.
int NumericalRank(const Matrix& M, double rank_tol = kDefaultRankTol);
int NumericalRank(const Eigen::MatrixXcd& M, double rank_tol = kDefaultRankTol);

/// Returns G with G G^T = X, where X is symmetric; eigenvalues below `clamp`
/// are treated as zero.
Matrix PsdFactor(const Matrix& X, double clamp = 1e-12);

/// Largest eigenvalue modulus.
double SpectralRadius(const Matrix& M);

/// X^k for k >= 0.
Matrix MatrixPower(const Matrix& X, int k);

}  // namespace privlqg
