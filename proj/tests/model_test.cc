#include "privlqg/model.h"

#include <gtest/gtest.h>

#include <random>

#include "privlqg/errors.h"
#include "test_support.h"

namespace privlqg {
namespace {

SystemModel Identity2Model(const Matrix& A, const Matrix& B, const Matrix& C) {
  const int n = static_cast<int>(A.rows());
  const int m = static_cast<int>(B.cols());
  const int q = static_cast<int>(C.rows());
  return SystemModel::Create(A, B, C, Matrix::Identity(n, n),
                             Matrix::Identity(q, q), Matrix::Identity(n, n),
                             Matrix::Identity(m, m), Vector::Zero(n),
                             Matrix::Identity(n, n));
}

TEST(ValidateModel, ExampleSystemPassesEveryCheck) {
  const ValidationReport report = ValidateModel(ExampleModel());
  EXPECT_TRUE(report.overall);
  EXPECT_EQ(report.checks.size(), 8u);
  for (const auto& check : report.checks) {
    EXPECT_TRUE(check.passed) << check.name << ": " << check.detail;
  }
}

TEST(ValidateModel, ZeroInputMatrixIsNotControllable) {
  const auto model = Identity2Model(Matrix::Identity(2, 2), Matrix::Zero(2, 1),
                                    Matrix::Identity(2, 2));
  const ValidationReport report = ValidateModel(model);
  EXPECT_FALSE(report.overall);
  ASSERT_NE(report.Find("(A,B) controllable"), nullptr);
  EXPECT_FALSE(report.Find("(A,B) controllable")->passed);
}

TEST(ValidateModel, UnobservedUnstableModeIsNotDetectable) {
  Matrix A(2, 2), C(1, 2);
  A << 2, 0, 0, 0.5;
  C << 0, 1;
  const auto model = Identity2Model(A, Matrix::Identity(2, 2), C);
  const ValidationReport report = ValidateModel(model);
  EXPECT_FALSE(report.overall);
  EXPECT_FALSE(report.Find("(C,A) detectable")->passed);
  EXPECT_TRUE(report.Find("(A,B) controllable")->passed);
}

TEST(ValidateModel, IndefiniteNoiseCovarianceFails) {
  SystemModel model = ExampleModel();
  model.Q << 1, 2, 2, 1;
  const ValidationReport report = ValidateModel(model);
  EXPECT_FALSE(report.overall);
  EXPECT_FALSE(report.Find("Q ⪰ 0")->passed);
  EXPECT_TRUE(report.Find("R ≻ 0")->passed);
}

TEST(ValidateModel, IsPure) {
  const auto model = ExampleModel();
  const auto a = ValidateModel(model);
  const auto b = ValidateModel(model);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].name, b.checks[i].name);
    EXPECT_EQ(a.checks[i].passed, b.checks[i].passed);
    EXPECT_EQ(a.checks[i].detail, b.checks[i].detail);
  }
}

TEST(SystemModel, DimensionMismatchNamesBothMatrices) {
  const auto ok = ExampleModel();
  try {
    SystemModel::Create(ok.A, ok.B, ok.C, ok.Q, Matrix::Identity(2, 2), ok.W,
                        ok.U, ok.x0_mean, ok.x0_cov);
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("R (2x2)"), std::string::npos) << what;
    EXPECT_NE(what.find("C (1x2)"), std::string::npos) << what;
  }
  EXPECT_THROW(SystemModel::Create(ok.A, Matrix::Ones(3, 1), ok.C, ok.Q, ok.R,
                                   ok.W, ok.U, ok.x0_mean, ok.x0_cov),
               DimensionError);
  EXPECT_THROW(SystemModel::Create(ok.A, ok.B, ok.C, ok.Q, ok.R, ok.W, ok.U,
                                   Vector::Zero(3), ok.x0_cov),
               DimensionError);
}

TEST(SystemModel, SymmetryToleranceOnIngestion) {
  const auto ok = ExampleModel();
  Matrix Q = ok.Q;
  Q(0, 1) += 5e-11;
  const auto model = SystemModel::Create(ok.A, ok.B, ok.C, Q, ok.R, ok.W, ok.U,
                                         ok.x0_mean, ok.x0_cov);
  EXPECT_EQ(model.Q(0, 1), model.Q(1, 0));
  Q(0, 1) += 1e-6;
  EXPECT_THROW(SystemModel::Create(ok.A, ok.B, ok.C, Q, ok.R, ok.W, ok.U,
                                   ok.x0_mean, ok.x0_cov),
               std::invalid_argument);
}

TEST(IsDetectable, Examples) {
  const auto model = ExampleModel();
  // Both eigenvalues of A have modulus < 1, so any C works.
  EXPECT_LT(SpectralRadius(model.A), 1.0);
  EXPECT_TRUE(IsDetectable(model.C, MatrixPower(model.A, 3)));
  EXPECT_TRUE(IsDetectable(Matrix::Zero(1, 2), 0.5 * Matrix::Identity(2, 2)));
  EXPECT_FALSE(IsDetectable(Matrix::Zero(1, 2), 2.0 * Matrix::Identity(2, 2)));
}

TEST(IsDetectable, ComplexUnstablePair) {
  // Rotation scaled outside the unit circle: observable through either state.
  Matrix M(2, 2);
  M << 0, -1.5, 1.5, 0;
  Matrix C(1, 2);
  C << 1, 0;
  EXPECT_TRUE(IsDetectable(C, M));
  EXPECT_FALSE(IsDetectable(Matrix::Zero(1, 2), M));
}

TEST(IsControllable, Examples) {
  const auto model = ExampleModel();
  // [B, AB] = [[2, 0.84], [1, 1.42]], det = 2.
  Matrix reach(2, 2);
  reach << 2, 0.84, 1, 1.42;
  EXPECT_NEAR(reach.determinant(), 2.0, 1e-12);
  EXPECT_TRUE(IsControllable(model.A, model.B));
  EXPECT_FALSE(IsControllable(model.A, Matrix::Zero(2, 1)));
  std::mt19937_64 rng(7);
  EXPECT_TRUE(IsControllable(testing::RandomMatrix(rng, 3, 3),
                             Matrix::Identity(3, 3)));
}

// Random diagonalizable M = V D V^{-1} with C = C0 V^{-1}: mode i is
// unobserved iff column i of C0 is zero, so detectability is known exactly.
struct ModalInstance {
  Matrix M;
  Matrix C;
  bool detectable;
  bool observable;
};

ModalInstance RandomModalInstance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_real_distribution<double> stable(0.1, 0.9), unstable(1.1, 3.0);
  std::bernoulli_distribution coin(0.5), hidden(0.3);
  const int n = dim(rng);
  const int q = dim(rng);
  Vector d(n);
  for (int i = 0; i < n; ++i) {
    d[i] = (coin(rng) ? stable(rng) : unstable(rng)) * (coin(rng) ? 1 : -1);
    // keep eigenvalues distinct
    d[i] += 1e-3 * i;
  }
  Matrix V = testing::RandomMatrix(rng, n, n) + 2.0 * Matrix::Identity(n, n);
  Matrix C0 = testing::RandomMatrix(rng, q, n);
  ModalInstance inst{Matrix(), Matrix(), true, true};
  for (int i = 0; i < n; ++i) {
    if (hidden(rng)) {
      C0.col(i).setZero();
      inst.observable = false;
      if (std::abs(d[i]) >= 1.0) inst.detectable = false;
    }
  }
  const Matrix V_inv = V.inverse();
  inst.M = V * d.asDiagonal() * V_inv;
  inst.C = C0 * V_inv;
  return inst;
}

TEST(IsDetectable, ModalOracleAndDuality) {
  std::mt19937_64 rng(20240101);
  int undetectable = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = RandomModalInstance(rng);
    EXPECT_EQ(IsDetectable(inst.C, inst.M), inst.detectable) << trial;
    EXPECT_EQ(IsDetectable(inst.C, inst.M),
              IsStabilizable(inst.M.transpose(), inst.C.transpose()))
        << trial;
    EXPECT_EQ(IsControllable(inst.M.transpose(), inst.C.transpose()),
              inst.observable)
        << trial;
    if (!inst.detectable) ++undetectable;
  }
  EXPECT_GT(undetectable, 5);
}

TEST(IsDetectable, StableMatrixIsDetectableForAnyC) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    Matrix M = testing::RandomMatrix(rng, n, n);
    M *= 0.95 / std::max(SpectralRadius(M), 1e-6);
    Matrix C = (trial % 3 == 0) ? Matrix::Zero(2, n)
                                : testing::RandomMatrix(rng, 2, n);
    EXPECT_TRUE(IsDetectable(C, M));
  }
}

TEST(PsdFactor, ReconstructsAndClampsNegativeRoundoff) {
  Matrix X(2, 2);
  X << 1, 1, 1, 1 - 1e-15;
  const Matrix G = PsdFactor(X);
  EXPECT_TRUE(G.allFinite());
  EXPECT_LT((G * G.transpose() - X).norm(), 1e-12);
}

}  // namespace
}  // namespace privlqg
