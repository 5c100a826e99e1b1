#pragma once

#include <random>

#include "privlqg/linalg.h"
#include "privlqg/model.h"

namespace privlqg::testing {

inline Matrix RandomMatrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M(i, j) = normal(rng);
  return M;
}

/// G G^T + shift I with G of random rank up to n.
inline Matrix RandomPsd(std::mt19937_64& rng, int n, double shift = 0.0) {
  std::uniform_int_distribution<int> rank_dist(0, n);
  const int rank = rank_dist(rng);
  Matrix G = rank > 0 ? RandomMatrix(rng, n, rank) : Matrix::Zero(n, 1);
  return Symmetrize(G * G.transpose()) + shift * Matrix::Identity(n, n);
}

/// A random well-posed model: spectral radius of A in [0.2, 1.2], Q and R
/// positive definite, generic B and C.
inline SystemModel RandomModel(std::mt19937_64& rng, int n, int m, int q) {
  std::uniform_real_distribution<double> radius(0.2, 1.2);
  Matrix A = RandomMatrix(rng, n, n);
  A *= radius(rng) / std::max(SpectralRadius(A), 1e-6);
  Matrix B = RandomMatrix(rng, n, m);
  Matrix C = RandomMatrix(rng, q, n);
  Matrix Q = RandomPsd(rng, n, 0.1);
  Matrix R = RandomPsd(rng, q, 0.5);
  Matrix W = RandomPsd(rng, n, 0.1);
  Matrix U = RandomPsd(rng, m, 0.5);
  return SystemModel::Create(A, B, C, Q, R, W, U, Vector::Zero(n),
                             Matrix::Identity(n, n));
}

/// True iff Y - X ⪰ 0 up to tol.
inline bool Dominates(const Matrix& Y, const Matrix& X, double tol) {
  return MinEigenvalue(Y - X) >= -tol;
}

inline double RelFrobenius(const Matrix& estimate, const Matrix& exact) {
  return (estimate - exact).norm() / exact.norm();
}

}  // namespace privlqg::testing
