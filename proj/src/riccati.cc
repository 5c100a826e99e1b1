#include "privlqg/riccati.h"

#include <cmath>

#include <Eigen/Cholesky>

#include "privlqg/errors.h"

namespace privlqg {

Matrix LyapunovStep(const Matrix& X, const SystemModel& model) {
  return Symmetrize(model.A * X * model.A.transpose() + model.Q);
}

Matrix MeasurementUpdate(const Matrix& X, const SystemModel& model) {
  const Matrix CX = model.C * X;
  const Matrix innovation_cov =
      Symmetrize(CX * model.C.transpose() + model.R);
  const Eigen::LLT<Matrix> llt(innovation_cov);
  return Symmetrize(X - CX.transpose() * llt.solve(CX));
}

Matrix RiccatiStep(const Matrix& X, const SystemModel& model) {
  return MeasurementUpdate(LyapunovStep(X, model), model);
}

Matrix LyapunovPower(const Matrix& X, const SystemModel& model, int times) {
  Matrix Y = X;
  for (int i = 0; i < times; ++i) Y = LyapunovStep(Y, model);
  return Y;
}

FixedPointResult FixedPoint(const MatrixMap& map, const Matrix& start,
                            const FixedPointOptions& options) {
  if (!(options.tol > 0.0) || options.max_iterations < 1) {
    throw std::invalid_argument("fixed point needs tol > 0 and max_iter >= 1");
  }
  Matrix X = start;
  double residual = 0.0;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    Matrix next = map(X);
    residual = (next - X).norm();
    const double scale = next.norm();
    if (!std::isfinite(residual) || !std::isfinite(scale)) {
      throw NonConvergence(residual, iter);
    }
    if (residual <= options.tol * (1.0 + scale)) {
      return {std::move(next), iter, residual};
    }
    X = std::move(next);
  }
  throw NonConvergence(residual, options.max_iterations);
}

SteadyFilter ComputeSteadyFilter(const SystemModel& model,
                                 const FixedPointOptions& options) {
  return ComputeSteadyFilter(model, model.Q, options);
}

SteadyFilter ComputeSteadyFilter(const SystemModel& model, const Matrix& start,
                                 const FixedPointOptions& options) {
  auto result = FixedPoint(
      [&model](const Matrix& X) { return RiccatiStep(X, model); }, start,
      options);
  const Matrix prior = LyapunovStep(result.value, model);
  const Matrix innovation_cov =
      Symmetrize(model.C * prior * model.C.transpose() + model.R);
  // K = P⁻ C' S⁻¹  <=>  K' = S⁻¹ C P⁻
  const Matrix K =
      Eigen::LLT<Matrix>(innovation_cov).solve(model.C * prior).transpose();
  return {std::move(result.value), K, result.iterations, result.residual};
}

namespace {

struct ControlTerms {
  Matrix Phi;
  Matrix L;
};

ControlTerms ComputeControlTerms(const Matrix& S, const SystemModel& model) {
  const Matrix BtS = model.B.transpose() * S;
  const Eigen::LLT<Matrix> llt(Symmetrize(BtS * model.B + model.U));
  const Matrix gain_rhs = BtS * model.A;  // B' S A
  Matrix L = -llt.solve(gain_rhs);
  Matrix Phi = Symmetrize(gain_rhs.transpose() * llt.solve(gain_rhs));
  return {std::move(Phi), std::move(L)};
}

}  // namespace

Matrix ControlPhi(const Matrix& S, const SystemModel& model) {
  return ComputeControlTerms(S, model).Phi;
}

Matrix FeedbackGain(const Matrix& S, const SystemModel& model) {
  return ComputeControlTerms(S, model).L;
}

Matrix ControlRiccatiStep(const Matrix& S_next, const SystemModel& model) {
  return Symmetrize(model.A.transpose() * S_next * model.A + model.W -
                    ControlPhi(S_next, model));
}

SteadyController ComputeSteadyController(const SystemModel& model,
                                         const FixedPointOptions& options) {
  auto result = FixedPoint(
      [&model](const Matrix& S) { return ControlRiccatiStep(S, model); },
      model.W, options);
  auto terms = ComputeControlTerms(result.value, model);
  return {std::move(result.value), std::move(terms.L), std::move(terms.Phi),
          result.iterations, result.residual};
}

SteadyState ComputeSteadyState(const SystemModel& model,
                               const FixedPointOptions& options) {
  auto filter = ComputeSteadyFilter(model, options);
  auto controller = ComputeSteadyController(model, options);
  SteadyState steady{std::move(filter.P_bar), std::move(filter.K),
                     std::move(controller.S), std::move(controller.L),
                     std::move(controller.Phi), 0.0};
  steady.J_star = BaselineCost(model, steady);
  return steady;
}

double BaselineCost(const SystemModel& model, const SteadyState& steady) {
  return (steady.S * model.Q).trace() + (steady.Phi * steady.P_bar).trace();
}

}  // namespace privlqg
