#include <gtest/gtest.h>

#include "filter_ergodics/merging.hpp"
#include "filter_ergodics/simulate.hpp"
#include "filter_ergodics/zoo.hpp"
#include "oracles.hpp"

namespace fe = filter_ergodics;

TEST(Merging, IidHiddenDynamicsForgetAtOnce) {
  fe::Matrix p0(3, 3);
  p0 << 0.2, 0.5, 0.3, 0.2, 0.5, 0.3, 0.2, 0.5, 0.3;
  fe::Matrix dens(6, 6);
  const auto s = fe::StateSpace::numbered(3, 2);
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t z2 = 0; z2 < 3; ++z2) {
      const double hi = 0.1 + 0.3 * static_cast<double>(z2);
      dens(a, s.index(z2, 0)) = 2.0 * (1.0 - hi);
      dens(a, s.index(z2, 1)) = 2.0 * hi;
    }
  }
  fe::Vector phi(2);
  phi << 0.5, 0.5;
  const auto m = fe::build_generalized_hmm(s, p0, dens, phi);
  const auto path = fe::simulate_path(m.kernel, m.law.pi, 30, 4);
  const auto d = fe::smoother_merging(m.kernel, path.ys, 0, 2);
  EXPECT_EQ(d[0], 2.0);
  for (std::size_t n = 1; n < d.size(); ++n) EXPECT_NEAR(d[n], 0.0, 1e-14);
}

TEST(Merging, CounterexampleKeepsInitialBit) {
  const auto m = fe::build_example_1_1();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto path = fe::simulate_path(m.kernel, m.law.pi, 40, seed);
    const auto d = fe::smoother_merging(m.kernel, path.ys, 0, 1);
    for (double v : d) EXPECT_NEAR(v, 2.0, 1e-12);
  }
}

TEST(Merging, SmoothedLawsMatchPathEnumeration) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto m = fe::random_model({3, 2, seed % 2 == 0, seed, 0.2});
    const auto path = fe::simulate_path(m.kernel, m.law.pi, 7, seed);
    const auto table = oracle::to_table(m.kernel);
    const auto backward = fe::detail::backward_messages(m.kernel, path.ys);
    const std::size_t z = path.xs.front();
    const auto smoothed = fe::smoothed_marginals(m.kernel, path.ys, z, backward);
    const auto ref = oracle::enumerate_smoothed(table, 3, 2, path.ys, z);
    for (std::size_t n = 0; n < smoothed.size(); ++n) {
      for (std::size_t x = 0; x < 3; ++x) EXPECT_NEAR(smoothed[n][x], ref[n][x], 1e-12);
    }
  }
}

TEST(Merging, NondegenerateModelMerges) {
  const auto m = fe::random_model({3, 2, true, 1, 0.0});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto path = fe::simulate_path(m.kernel, m.law.pi, 100, seed);
    const auto d = fe::smoother_merging(m.kernel, path.ys, 0, 2);
    for (std::size_t n = 50; n < d.size(); ++n) EXPECT_LT(d[n], 1e-3);
    // informational monotonicity on a strictly positive kernel
    for (std::size_t n = 1; n < d.size(); ++n) EXPECT_LE(d[n], d[n - 1] + 1e-12);
  }
}

TEST(Merging, LongWindowDoesNotUnderflow) {
  const auto m = fe::random_model({4, 3, true, 2, 0.0});
  const auto path = fe::simulate_path(m.kernel, m.law.pi, 5000, 8);
  const auto d = fe::smoother_merging(m.kernel, path.ys, 0, 3);
  for (double v : d) EXPECT_TRUE(std::isfinite(v));
  EXPECT_LT(d.back(), 1e-12);
}

TEST(Merging, ZeroLikelihoodReported) {
  const auto k = fe::validate_kernel(fe::Matrix(fe::Matrix::Identity(4, 4)), fe::StateSpace::numbered(2, 2));
  const std::vector<std::size_t> stay{0, 0, 0};
  EXPECT_NO_THROW(fe::smoother_merging(k, stay, 0, 1));
  const std::vector<std::size_t> jump{0, 1};
  EXPECT_THROW(fe::smoother_merging(k, jump, 0, 1), fe::ZeroLikelihood);
}
