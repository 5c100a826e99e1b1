#include "privlqg/model.h"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "privlqg/errors.h"

namespace privlqg {
namespace {

std::string Shape(const Matrix& X) {
  return std::to_string(X.rows()) + "x" + std::to_string(X.cols());
}

void RequireShape(const Matrix& X, Eigen::Index rows, Eigen::Index cols,
                  const char* name, const char* against, const Matrix& other) {
  if (X.rows() != rows || X.cols() != cols) {
    throw DimensionError(std::string("dimension mismatch between ") + name +
                         " (" + Shape(X) + ") and " + against + " (" +
                         Shape(other) + ")");
  }
}

Matrix IngestSymmetric(Matrix X, const char* name) {
  if (X.size() > 0 &&
      (X - X.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    throw std::invalid_argument(std::string(name) + " is not symmetric");
  }
  return Symmetrize(X);
}

double PsdTolerance(const Matrix& X) {
  return 1e-12 * std::max(1.0, X.norm());
}

std::string Num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

ValidationCheck SemidefiniteCheck(const std::string& name, const Matrix& X) {
  const double lo = MinEigenvalue(X);
  return {name, lo >= -PsdTolerance(X), "min eigenvalue " + Num(lo)};
}

ValidationCheck DefiniteCheck(const std::string& name, const Matrix& X) {
  const double lo = MinEigenvalue(X);
  const bool llt_ok = Eigen::LLT<Matrix>(Symmetrize(X)).info() == Eigen::Success;
  return {name, llt_ok && lo > 0.0, "min eigenvalue " + Num(lo)};
}

// Eigenvalues of M on or outside the unit circle.
std::vector<std::complex<double>> UnstableModes(const Matrix& M) {
  std::vector<std::complex<double>> modes;
  if (M.size() == 0) return modes;
  Eigen::EigenSolver<Matrix> solver(M, false);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const auto lambda = solver.eigenvalues()[i];
    if (std::abs(lambda) >= 1.0) modes.push_back(lambda);
  }
  return modes;
}

}  // namespace

SystemModel SystemModel::Create(Matrix A, Matrix B, Matrix C, Matrix Q,
                                Matrix R, Matrix W, Matrix U, Vector x0_mean,
                                Matrix x0_cov) {
  SystemModel model{std::move(A), std::move(B), std::move(C),
                    std::move(Q), std::move(R), std::move(W),
                    std::move(U), std::move(x0_mean), std::move(x0_cov)};
  CheckDimensions(model);
  model.Q = IngestSymmetric(std::move(model.Q), "Q");
  model.R = IngestSymmetric(std::move(model.R), "R");
  model.W = IngestSymmetric(std::move(model.W), "W");
  model.U = IngestSymmetric(std::move(model.U), "U");
  model.x0_cov = IngestSymmetric(std::move(model.x0_cov), "x0_cov");
  return model;
}

void CheckDimensions(const SystemModel& model) {
  const auto& A = model.A;
  if (A.rows() != A.cols() || A.rows() == 0) {
    throw DimensionError("A (" + Shape(A) + ") must be square and non-empty");
  }
  const auto n = A.rows();
  if (model.B.rows() != n || model.B.cols() == 0) {
    throw DimensionError("dimension mismatch between B (" + Shape(model.B) +
                         ") and A (" + Shape(A) + ")");
  }
  if (model.C.cols() != n || model.C.rows() == 0) {
    throw DimensionError("dimension mismatch between C (" + Shape(model.C) +
                         ") and A (" + Shape(A) + ")");
  }
  const auto m = model.B.cols();
  const auto q = model.C.rows();
  RequireShape(model.Q, n, n, "Q", "A", A);
  RequireShape(model.R, q, q, "R", "C", model.C);
  RequireShape(model.W, n, n, "W", "A", A);
  RequireShape(model.U, m, m, "U", "B", model.B);
  RequireShape(model.x0_cov, n, n, "x0_cov", "A", A);
  if (model.x0_mean.size() != n) {
    throw DimensionError("dimension mismatch between x0_mean (" +
                         std::to_string(model.x0_mean.size()) + ") and A (" +
                         Shape(A) + ")");
  }
}

SystemModel ExampleModel() {
  Matrix A(2, 2), B(2, 1), C(1, 2), Q(2, 2), R(1, 1), W(2, 2), U(1, 1);
  A << 0.19, 0.46, 0.31, 0.8;
  B << 2, 1;
  C << 1, 0;
  Q << 1.9, 0.9, 0.9, 2.8;
  R << 1;
  W << 1.5, 0.5, 0.5, 1.5;
  U << 1;
  return SystemModel::Create(A, B, C, Q, R, W, U, Vector::Zero(2),
                             Matrix::Identity(2, 2));
}

const ValidationCheck* ValidationReport::Find(const std::string& name) const {
  for (const auto& check : checks) {
    if (check.name == name) return &check;
  }
  return nullptr;
}

ValidationReport ValidateModel(const SystemModel& model, double rank_tol) {
  CheckDimensions(model);
  ValidationReport report;
  report.checks.push_back(SemidefiniteCheck("Q ⪰ 0", model.Q));
  report.checks.push_back(DefiniteCheck("R ≻ 0", model.R));
  report.checks.push_back(SemidefiniteCheck("W ⪰ 0", model.W));
  report.checks.push_back(DefiniteCheck("U ≻ 0", model.U));
  report.checks.push_back(SemidefiniteCheck("Σ₀ ⪰ 0", model.x0_cov));

  const bool controllable = IsControllable(model.A, model.B, rank_tol);
  report.checks.push_back({"(A,B) controllable", controllable,
                           controllable ? "full rank" : "rank deficient"});
  const bool detectable = IsDetectable(model.C, model.A, rank_tol);
  report.checks.push_back(
      {"(C,A) detectable", detectable,
       detectable ? "PBH passed" : "unstable mode unobserved"});
  const bool stabilizable =
      IsStabilizable(model.A, PsdFactor(model.Q), rank_tol);
  report.checks.push_back(
      {"(A,√Q) stabilizable", stabilizable,
       stabilizable ? "PBH passed" : "unstable mode not excited by noise"});

  report.overall = true;
  for (const auto& check : report.checks) report.overall &= check.passed;
  return report;
}

bool IsControllable(const Matrix& A, const Matrix& B, double rank_tol) {
  const auto n = A.rows();
  if (A.cols() != n || B.rows() != n) {
    throw DimensionError("dimension mismatch between A (" + Shape(A) +
                         ") and B (" + Shape(B) + ")");
  }
  const auto m = B.cols();
  Matrix reach(n, n * m);
  Matrix block = B;
  for (Eigen::Index i = 0; i < n; ++i) {
    reach.middleCols(i * m, m) = block;
    block = A * block;
  }
  return NumericalRank(reach, rank_tol) == n;
}

bool IsDetectable(const Matrix& C, const Matrix& M, double rank_tol) {
  const auto n = M.rows();
  if (M.cols() != n || C.cols() != n) {
    throw DimensionError("dimension mismatch between C (" + Shape(C) +
                         ") and M (" + Shape(M) + ")");
  }
  const auto q = C.rows();
  for (const auto& lambda : UnstableModes(M)) {
    Eigen::MatrixXcd pbh(n + q, n);
    pbh.topRows(n) = M.cast<std::complex<double>>();
    pbh.topRows(n).diagonal().array() -= lambda;
    pbh.bottomRows(q) = C.cast<std::complex<double>>();
    if (NumericalRank(pbh, rank_tol) < n) return false;
  }
  return true;
}

bool IsStabilizable(const Matrix& A, const Matrix& G, double rank_tol) {
  const auto n = A.rows();
  if (A.cols() != n || G.rows() != n) {
    throw DimensionError("dimension mismatch between A (" + Shape(A) +
                         ") and G (" + Shape(G) + ")");
  }
  const auto p = G.cols();
  for (const auto& lambda : UnstableModes(A)) {
    Eigen::MatrixXcd pbh(n, n + p);
    pbh.leftCols(n) = A.cast<std::complex<double>>();
    pbh.leftCols(n).diagonal().array() -= lambda;
    pbh.rightCols(p) = G.cast<std::complex<double>>();
    if (NumericalRank(pbh, rank_tol) < n) return false;
  }
  return true;
}

}  // namespace privlqg
