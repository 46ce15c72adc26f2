#include <gtest/gtest.h>

#include "filter_ergodics/stationary.hpp"
#include "filter_ergodics/zoo.hpp"
#include "oracles.hpp"

namespace fe = filter_ergodics;

TEST(StationaryLaw, DoublyStochasticIsUniform) {
  fe::Matrix m(2, 2);
  m << 0.3, 0.7, 0.7, 0.3;
  const auto k = fe::validate_kernel(m, fe::StateSpace::numbered(2, 1));
  const auto law = fe::stationary_law(k);
  EXPECT_NEAR(law.pi(0), 0.5, 1e-12);
  EXPECT_NEAR(law.pi(1), 0.5, 1e-12);
  EXPECT_TRUE(law.unique());
  EXPECT_EQ(law.method, fe::StationaryMethod::kLinearSolve);
}

TEST(StationaryLaw, CounterexampleUniformOnGraphOfParity) {
  const auto m = fe::build_example_1_1();
  const auto& s = m.kernel.space();
  for (std::size_t z = 0; z < 4; ++z) {
    const std::size_t h = (z >> 1) ^ (z & 1);
    for (std::size_t w = 0; w < 2; ++w) EXPECT_NEAR(m.law.pi(s.index(z, w)), w == h ? 0.25 : 0.0, 1e-12);
  }
  const fe::Vector e = fe::hidden_marginal(s, m.law.pi);
  for (std::size_t z = 0; z < 4; ++z) EXPECT_NEAR(e(z), 0.25, 1e-12);
  EXPECT_EQ(m.law.eigenspace_dimension, 1u);
}

TEST(StationaryLaw, MatchesPowerIterationOracle) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto m = fe::random_model({3, 2, seed % 2 == 0, seed, 0.2});
    const auto ref = oracle::power_iteration(oracle::to_table(m.kernel));
    if (!m.law.unique()) continue;
    for (std::size_t a = 0; a < 6; ++a) EXPECT_NEAR(m.law.pi(a), ref[a], 1e-9) << "seed " << seed;
    EXPECT_LT(fe::stationarity_residual(m.kernel, m.law.pi), 1e-10);
  }
}

TEST(StationaryLaw, FlagsNonUniqueness) {
  fe::Matrix m = fe::Matrix::Zero(4, 4);
  m.block(0, 0, 2, 2) << 0.5, 0.5, 0.2, 0.8;
  m.block(2, 2, 2, 2) << 0.9, 0.1, 0.6, 0.4;
  const auto k = fe::validate_kernel(m, fe::StateSpace::numbered(4, 1));
  const auto law = fe::stationary_law(k);
  EXPECT_EQ(law.eigenspace_dimension, 2u);
  EXPECT_FALSE(law.unique());
  EXPECT_LT(fe::stationarity_residual(k, law.pi), 1e-10);
  EXPECT_NEAR(law.pi.sum(), 1.0, 1e-12);
}

TEST(StationaryLaw, SuppliedLawChecked) {
  const auto m = fe::build_example_1_1_noisy(0.2);
  EXPECT_NO_THROW(fe::supplied_stationary_law(m.kernel, m.law.pi));
  fe::Vector bad = fe::Vector::Constant(8, 0.125);
  bad(0) += 0.05;
  bad(1) -= 0.05;
  EXPECT_THROW(fe::supplied_stationary_law(m.kernel, bad), fe::ValidationError);
}

TEST(ReverseKernel, SymmetricKernelIsItsOwnReversal) {
  fe::Matrix m(3, 3);
  m << 0.2, 0.5, 0.3, 0.5, 0.1, 0.4, 0.3, 0.4, 0.3;
  const auto k = fe::validate_kernel(m, fe::StateSpace::numbered(3, 1));
  const auto rev = fe::reverse_kernel(k, fe::stationary_law(k));
  EXPECT_LT((rev.matrix() - k.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ReverseKernel, DetailedBalanceAndInvolution) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto m = fe::random_model({3, 2, true, seed, 0.3});
    const auto rev = fe::reverse_kernel(m.kernel, m.law);
    for (std::size_t a = 0; a < 6; ++a) {
      for (std::size_t b = 0; b < 6; ++b) {
        EXPECT_NEAR(m.law.pi(a) * m.kernel(a, b), m.law.pi(b) * rev(b, a), 1e-12);
      }
    }
    const auto back = fe::reverse_kernel(rev, fe::supplied_stationary_law(rev, m.law.pi));
    for (std::size_t a = 0; a < 6; ++a) {
      if (m.law.pi(a) <= 0.0) continue;
      for (std::size_t b = 0; b < 6; ++b) EXPECT_NEAR(back(a, b), m.kernel(a, b), 1e-12);
    }
  }
}

TEST(ReverseKernel, CounterexamplePredecessors) {
  const auto m = fe::build_example_1_1();
  const auto& s = m.kernel.space();
  const auto rev = fe::reverse_kernel(m.kernel, m.law);
  for (std::size_t z = 0; z < 4; ++z) {
    const std::size_t a = z >> 1, b = z & 1;
    const std::size_t from = s.index(z, a ^ b);
    for (std::size_t c = 0; c < 2; ++c) {
      // predecessor (c, a) observed through |a - c|
      EXPECT_NEAR(rev(from, s.index(2 * c + a, c ^ a)), 0.5, 1e-12);
    }
    // states off the support keep a unit self-loop
    const std::size_t off = s.index(z, 1 - (a ^ b));
    EXPECT_EQ(rev(off, off), 1.0);
  }
}

TEST(ProductStructure, ProductMeasureHasUnitDensity) {
  const fe::StateSpace s = fe::StateSpace::numbered(2, 3);
  fe::Vector pe(2), pf(3), pi(6);
  pe << 0.4, 0.6;
  pf << 0.2, 0.3, 0.5;
  for (std::size_t z = 0; z < 2; ++z) {
    for (std::size_t w = 0; w < 3; ++w) pi(s.index(z, w)) = pe(z) * pf(w);
  }
  const auto r = fe::product_structure_check(s, pi);
  EXPECT_TRUE(r.holds);
  EXPECT_LT((r.density.array() - 1.0).abs().maxCoeff(), 1e-12);
}

TEST(ProductStructure, CounterexampleFails) {
  const auto m = fe::build_example_1_1();
  const auto r = fe::product_structure_check(m.kernel.space(), m.law.pi);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.missing_state.has_value());
  EXPECT_EQ(m.law.pi(*r.missing_state), 0.0);
  EXPECT_FALSE(fe::support_restriction(m.kernel, m.law.pi).has_value());
}

TEST(ProductStructure, NondegenerateErgodicModelsHaveProductSupport) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto m = fe::random_model({3, 2, true, seed, 0.3});
    if (!m.law.unique()) continue;
    EXPECT_TRUE(fe::product_structure_check(m.kernel.space(), m.law.pi).holds) << "seed " << seed;
  }
}

TEST(SupportRestriction, DropsStatesOutsideSupport) {
  fe::Matrix m = fe::Matrix::Zero(4, 4);
  // hidden state 1 is transient: it always moves to 0
  m << 0.5, 0.5, 0.0, 0.0,
       0.5, 0.5, 0.0, 0.0,
       0.5, 0.5, 0.0, 0.0,
       0.5, 0.5, 0.0, 0.0;
  const auto k = fe::validate_kernel(m, fe::StateSpace::numbered(2, 2));
  const auto law = fe::stationary_law(k);
  const auto restricted = fe::support_restriction(k, law.pi);
  ASSERT_TRUE(restricted.has_value());
  EXPECT_EQ(restricted->space().hidden_size(), 1u);
  EXPECT_EQ(restricted->space().observed_size(), 2u);
  EXPECT_EQ(restricted->space().hidden_labels().front(), "0");
}
