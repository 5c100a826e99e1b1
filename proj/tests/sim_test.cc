#include "privlqg/sim.h"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "privlqg/intermittent.h"
#include "test_support.h"

namespace privlqg {
namespace {

using testing::RelFrobenius;

class Sim : public ::testing::Test {
 protected:
  SystemModel model = ExampleModel();
  SteadyState steady = ComputeSteadyState(model);
};

TEST(Seeds, TrialSeedsAreDistinctAndStable) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(TrialSeed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(TrialSeed(42, 3), TrialSeed(42, 3));
  EXPECT_NE(TrialSeed(42, 3), TrialSeed(43, 3));
  // SplitMix64 reference output for input 0.
  EXPECT_EQ(Mix64(0), 0xE220A8397B1DCDAFULL);
}

TEST(NormalSampler, FirstTwoMoments) {
  NormalSampler sampler(11);
  const int count = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < count; ++i) {
    const double z = sampler.Next();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / count;
  const double var = sum_sq / count - mean * mean;
  EXPECT_LT(std::abs(mean), 5.0 / std::sqrt(count));
  EXPECT_LT(std::abs(var - 1.0), 5.0 * std::sqrt(2.0 / count));
}

TEST_F(Sim, TraceInvariants) {
  const int N = 60;
  const auto trace = Simulate(model, steady, 3, N, 9);
  EXPECT_EQ(trace.x.cols(), N + 1);
  EXPECT_EQ(trace.y.cols(), N);
  EXPECT_EQ(trace.x_hat.cols(), N);
  EXPECT_EQ(trace.u.cols(), N);
  EXPECT_EQ(trace.stage_cost.size(), N);
  ASSERT_EQ(trace.gamma.size(), static_cast<std::size_t>(N));
  const PeriodicScheme scheme(3);
  for (int k = 0; k < N; ++k) {
    EXPECT_EQ(trace.gamma[k], Gamma(scheme, k)) << k;
    EXPECT_EQ(trace.u.col(k), steady.L * trace.x_hat.col(k));
    const Vector x = trace.x.col(k);
    const Vector u = trace.u.col(k);
    EXPECT_DOUBLE_EQ(trace.stage_cost[k],
                     x.dot(model.W * x) + u.dot(model.U * u));
    if (!trace.gamma[k]) EXPECT_EQ(trace.x_hat.col(k), trace.x_prior.col(k));
  }
}

TEST_F(Sim, SameSeedIsBitIdentical) {
  const auto a = Simulate(model, steady, 3, 500, 123);
  const auto b = Simulate(model, steady, 3, 500, 123);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.x_hat, b.x_hat);
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.stage_cost, b.stage_cost);
  const auto c = Simulate(model, steady, 3, 500, 124);
  EXPECT_NE(a.x, c.x);
}

TEST_F(Sim, NoiselessEstimatesTrackState) {
  SystemModel quiet = model;
  quiet.Q.setZero();
  quiet.R = Matrix::Constant(1, 1, 1e-10);
  const SteadyState s = ComputeSteadyState(quiet);
  const auto trace = Simulate(quiet, s, 1, 200, 5);
  for (int k = 50; k < 200; ++k) {
    EXPECT_LT((trace.x.col(k) - trace.x_hat.col(k)).norm(), 1e-4) << k;
  }
}

TEST_F(Sim, PrivacyEstimateDeviatesFromFullEstimate) {
  const auto trace = Simulate(model, steady, 3, 3000, 31);
  double off_dev = 0.0;
  int off_count = 0;
  for (int k = 1; k < trace.horizon; ++k) {
    if (trace.gamma[k]) continue;
    off_dev += (trace.x_hat.col(k) - trace.x_hat_full.col(k)).squaredNorm();
    ++off_count;
  }
  EXPECT_GT(off_dev / off_count, 0.1);

  const auto every = Simulate(model, steady, 1, 300, 31);
  EXPECT_EQ(every.x_hat, every.x_hat_full);
}

TEST_F(Sim, EmpiricalCovarianceMatchesCycle) {
  MonteCarloOptions mc;
  mc.period = 3;
  mc.trials = 20;
  mc.horizon = 6000;
  mc.seed = 8;
  const PeriodicAnalysis a = AnalyzePeriod(model, steady, 3);
  const auto cov = EmpiricalCovarianceByOffset(model, steady, mc);
  ASSERT_EQ(cov.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_LT(RelFrobenius(cov[i], a.cycle[i]), 0.05) << "offset " << i;
  }
  EXPECT_GT(cov[2].trace(), cov[1].trace());
  EXPECT_GT(cov[1].trace(), cov[0].trace());

  // time-averaged excess over P̄ is the privacy metric
  const Matrix excess = (cov[0] + cov[1] + cov[2]) / 3.0 - steady.P_bar;
  EXPECT_LT(RelFrobenius(excess, a.Q_privacy), 0.05);

  mc.period = 1;
  const auto one = EmpiricalCovarianceByOffset(model, steady, mc);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_LT(RelFrobenius(one[0], steady.P_bar), 0.05);
}

TEST_F(Sim, MonteCarloArgumentChecks) {
  MonteCarloOptions mc;
  mc.period = 3;
  mc.trials = 2;
  mc.horizon = 2000;
  mc.burn_in = 200;  // fewer than 100 periods
  EXPECT_THROW(RunMonteCarlo(model, steady, mc), std::invalid_argument);
  mc.burn_in = 2000;
  EXPECT_THROW(RunMonteCarlo(model, steady, mc), std::invalid_argument);
  mc.burn_in = -1;
  mc.trials = 1;
  mc.horizon = 5000;
  EXPECT_THROW(EmpiricalCovarianceByOffset(model, steady, mc),
               std::invalid_argument);
  EXPECT_TRUE(std::isnan(RunMonteCarlo(model, steady, mc).cost.standard_error));
}

TEST_F(Sim, EmpiricalCostMatchesAnalytic) {
  for (int T : {1, 3}) {
    MonteCarloOptions mc;
    mc.period = T;
    mc.trials = 40;
    mc.horizon = 4000;
    mc.seed = 1234;
    const auto summary = RunMonteCarlo(model, steady, mc);
    const double analytic = DegradedCost(model, steady, T);
    EXPECT_LT(std::abs(summary.cost.mean - analytic),
              3.0 * summary.cost.standard_error)
        << "T=" << T << " mean " << summary.cost.mean << " analytic "
        << analytic << " se " << summary.cost.standard_error;
    EXPECT_EQ(summary.cost.trials, 40);
    EXPECT_EQ(summary.cost.samples, 40LL * 3000);
  }
}

TEST_F(Sim, EmpiricalAverageCostFromTraces) {
  std::vector<SimulationTrace> traces;
  for (int i = 0; i < 3; ++i) traces.push_back(Simulate(model, steady, 2, 50, i));
  const auto cost = EmpiricalAverageCost(traces, 10);
  double sum = 0.0;
  for (const auto& t : traces)
    for (int k = 10; k < 50; ++k) sum += t.stage_cost[k];
  EXPECT_NEAR(cost.mean, sum / 120.0, 1e-12);
  EXPECT_EQ(cost.samples, 120);
  EXPECT_GT(cost.standard_error, 0.0);

  SystemModel free = model;
  free.W.setZero();
  const SteadyState s = ComputeSteadyState(free);
  EXPECT_EQ(s.L.norm(), 0.0);
  std::vector<SimulationTrace> zero = {Simulate(free, s, 2, 100, 1),
                                       Simulate(free, s, 2, 100, 2)};
  const auto nothing = EmpiricalAverageCost(zero, 10);
  EXPECT_EQ(nothing.mean, 0.0);
  EXPECT_EQ(nothing.standard_error, 0.0);
}

TEST_F(Sim, InnovationsAtTransmissionsAreWhite) {
  const int T = 3;
  const auto trace = Simulate(model, steady, T, 200000, 77);
  std::vector<double> innovations;
  for (int k = 1000; k < trace.horizon; ++k) {
    if (!trace.gamma[k]) continue;
    innovations.push_back(
        (trace.y.col(k) - model.C * trace.x_prior.col(k))(0));
  }
  const double count = static_cast<double>(innovations.size());
  double mean = 0.0;
  for (double v : innovations) mean += v;
  mean /= count;
  double c0 = 0.0;
  for (double v : innovations) c0 += (v - mean) * (v - mean);
  for (int lag = 1; lag <= 3; ++lag) {
    double c = 0.0;
    for (std::size_t i = lag; i < innovations.size(); ++i) {
      c += (innovations[i] - mean) * (innovations[i - lag] - mean);
    }
    EXPECT_LT(std::abs(c / c0), 3.0 / std::sqrt(count)) << "lag " << lag * T;
  }
}

TEST_F(Sim, FiniteHorizonSingleStep) {
  const auto fh = ComputeFiniteHorizonCost(model, steady, 1, 1);
  const Matrix S1 = model.W;
  const Matrix Phi0 = ControlPhi(S1, model);
  const Matrix S0 = model.A.transpose() * S1 * model.A + model.W - Phi0;
  const double expected = (S0 * model.x0_cov).trace() +
                          model.x0_mean.dot(S0 * model.x0_mean) +
                          (S1 * model.Q).trace() +
                          (Phi0 * steady.P_bar).trace();
  EXPECT_NEAR(fh.J_0N, expected, 1e-12);
  EXPECT_NEAR(fh.J_0N, fh.initial_term + fh.r0 + fh.t0, 1e-12);
}

TEST_F(Sim, FiniteHorizonAverageApproachesAnalytic) {
  const int N = 10000;
  for (int T : {1, 2, 3}) {
    const auto fh = ComputeFiniteHorizonCost(model, steady, T, N);
    const double analytic = DegradedCost(model, steady, T);
    EXPECT_LT(std::abs(fh.J_0N / N - analytic), 0.01 * analytic) << "T=" << T;
    for (int k = 0; k <= N - 200; k += 97) {
      EXPECT_LE((fh.S_seq[k] - steady.S).norm(), 1e-8) << k;
    }
  }
  const auto base = ComputeFiniteHorizonCost(model, steady, 1, N);
  EXPECT_LT(std::abs(base.J_0N / N - steady.J_star), 0.01 * steady.J_star);
}

}  // namespace
}  // namespace privlqg
