#include <gtest/gtest.h>

#include <cmath>

#include "filter_ergodics/kalman.hpp"

namespace fe = filter_ergodics;

TEST(Riccati, FixedPointSolvesQuadratic) {
  const double s = fe::riccati_fixed_point();
  // s = (4s + 1) / (4s + 2)  <=>  4s^2 - 2s - 1 = 0
  EXPECT_NEAR(4.0 * s * s - 2.0 * s - 1.0, 0.0, 1e-15);
  EXPECT_NEAR(s, 0.80901699437494745, 1e-9);
  const auto step = fe::kalman_step({0.0, s}, 0.0);
  EXPECT_NEAR(step.s2, s, 1e-15);
}

TEST(Riccati, MonotoneConvergence) {
  for (double s0 : {0.01, 1.0, 50.0}) {
    const auto it = fe::riccati_iterates(s0, 60);
    ASSERT_EQ(it.size(), 61u);
    EXPECT_EQ(it.front(), s0);
    const double sign = it[1] - it[0];
    for (std::size_t n = 1; n < it.size(); ++n) EXPECT_GE((it[n] - it[n - 1]) * sign, -1e-15);
    EXPECT_LT(std::abs(it.back() - fe::riccati_fixed_point()), 1e-12);
  }
}

TEST(KalmanStep, MatchesScalarRecursion) {
  const fe::KalmanState s{0.3, 0.7};
  const double y = -1.25;
  const double mp = 0.6, vp = 3.8, k = vp / (vp + 1.0);
  const auto next = fe::kalman_step(s, y);
  EXPECT_NEAR(next.m, mp + k * (y - mp), 1e-15);
  EXPECT_NEAR(next.s2, (1.0 - k) * vp, 1e-15);
}

TEST(KalmanDemo, BranchesAndLimits) {
  const auto r = fe::kalman_lambda_demo(300, 4000, 42);
  EXPECT_EQ(r.branch1.filter_x2, 1);
  EXPECT_EQ(r.branch0.filter_x2, 0);
  EXPECT_EQ(r.branch1.hidden_x2_mean, 0.0);
  EXPECT_TRUE(r.riccati_monotone);
  EXPECT_LE(r.converged_at, 60u);
  EXPECT_EQ(r.riccati.size(), 301u);
  EXPECT_EQ(r.trace_m_branch1.size(), 301u);
  // branch 0 is exact: m = y / 2 with y ~ N(0, 2)
  EXPECT_NEAR(r.branch0.m_variance, 0.5, 0.05);
  EXPECT_NEAR(r.branch0.mse, 0.5, 0.05);
  EXPECT_NEAR(r.branch1.m_variance, r.branch1.predicted_m_variance, 0.15);
  EXPECT_GT(r.branch1.mse, r.branch0.mse);
}

TEST(KalmanDemo, RejectsBadArguments) {
  EXPECT_THROW(fe::kalman_lambda_demo(0, 10, 1), fe::ValidationError);
  EXPECT_THROW(fe::kalman_lambda_demo(10, 0, 1), fe::ValidationError);
  EXPECT_THROW(fe::kalman_lambda_demo(10, 10, 1, 0.0), fe::ValidationError);
}
