#include <gtest/gtest.h>

#include "filter_ergodics/assumptions.hpp"
#include "filter_ergodics/mixing.hpp"
#include "filter_ergodics/zoo.hpp"
#include "oracles.hpp"

namespace fe = filter_ergodics;

namespace {

// alpha_fwd[n] recomputed with naive matrix powers.
double naive_alpha(const fe::JointKernel& k, const fe::Vector& pi, std::size_t n) {
  const auto& s = k.space();
  const auto pn = oracle::power(oracle::to_table(k), n);
  std::vector<double> pe(s.hidden_size(), 0.0);
  for (std::size_t a = 0; a < s.size(); ++a) pe[s.hidden_of(a)] += pi(a);
  double total = 0.0;
  for (std::size_t a = 0; a < s.size(); ++a) {
    std::vector<double> row(s.hidden_size(), 0.0);
    for (std::size_t b = 0; b < s.size(); ++b) row[s.hidden_of(b)] += pn[a][b];
    double tv = 0.0;
    for (std::size_t z = 0; z < s.hidden_size(); ++z) tv += std::abs(row[z] - pe[z]);
    total += pi(a) * tv;
  }
  return total;
}

}  // namespace

TEST(Mixing, IidChainIsMixedAfterOneStep) {
  fe::Vector pi(4);
  pi << 0.1, 0.2, 0.3, 0.4;
  fe::Matrix p(4, 4);
  for (int a = 0; a < 4; ++a) p.row(a) = pi.transpose();
  const auto k = fe::validate_kernel(p, fe::StateSpace::numbered(2, 2));
  const auto m = fe::mixing_profile(k, fe::stationary_law(k), 5);
  for (std::size_t n = 1; n <= 5; ++n) {
    EXPECT_NEAR(m.alpha_fwd[n], 0.0, 1e-15);
    EXPECT_NEAR(m.alpha_rev[n], 0.0, 1e-15);
    EXPECT_NEAR(m.beta[n], 0.0, 1e-15);
  }
  EXPECT_GT(m.beta[0], 0.0);
}

TEST(Mixing, CounterexampleHiddenMarginalMixesInTwoSteps) {
  const auto model = fe::build_example_1_1();
  const auto m = fe::mixing_profile(model.kernel, model.law, 20);
  EXPECT_NEAR(m.alpha_fwd[1], 1.0, 1e-12);
  EXPECT_NEAR(naive_alpha(model.kernel, model.law.pi, 1), 1.0, 1e-12);
  for (std::size_t n = 2; n <= 20; ++n) {
    EXPECT_NEAR(m.alpha_fwd[n], 0.0, 1e-12) << n;
    EXPECT_NEAR(naive_alpha(model.kernel, model.law.pi, n), 0.0, 1e-12) << n;
  }
}

TEST(Mixing, NoisyCounterexampleKeepsHiddenDynamics) {
  const auto model = fe::build_example_1_1_noisy(0.1);
  const auto m = fe::mixing_profile(model.kernel, model.law, 4);
  EXPECT_NEAR(m.alpha_fwd[1], 1.0, 1e-12);
  EXPECT_NEAR(m.alpha_fwd[2], 0.0, 1e-12);
}

TEST(Mixing, AgreesWithNaivePowers) {
  const auto model = fe::random_model({3, 2, true, 9, 0.2});
  const auto m = fe::mixing_profile(model.kernel, model.law, 6);
  for (std::size_t n = 0; n <= 6; ++n) EXPECT_NEAR(m.alpha_fwd[n], naive_alpha(model.kernel, model.law.pi, n), 1e-12);
}

TEST(Mixing, MarginalCoefficientsDominatedByBeta) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto model = fe::random_model({3, 2, seed % 2 == 1, seed, 0.25});
    const auto m = fe::mixing_profile(model.kernel, model.law, 20);
    for (std::size_t n = 0; n <= 20; ++n) {
      EXPECT_LE(m.alpha_fwd[n], m.beta[n] + 1e-12);
      EXPECT_LE(m.alpha_rev[n], m.beta[n] + 1e-12);
      EXPECT_GE(m.beta[n], 0.0);
      EXPECT_LE(m.beta[n], 2.0);
    }
  }
}

TEST(Mixing, BetaIsTimeSymmetric) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto model = fe::random_model({3, 2, true, seed, 0.2});
    const auto rev = fe::reverse_kernel(model.kernel, model.law);
    const auto forward = fe::beta_coefficients(model.kernel, model.law.pi, 10);
    const auto backward = fe::beta_coefficients(rev, model.law.pi, 10);
    for (std::size_t n = 0; n <= 10; ++n) EXPECT_NEAR(forward[n], backward[n], 1e-12);
  }
}

TEST(Mixing, BetaDecaysGeometricallyForFullSupport) {
  const auto model = fe::random_model({3, 2, true, 4, 0.0});
  const auto beta = fe::mixing_profile(model.kernel, model.law, 12).beta;
  // strictly positive kernel: each step contracts by at least the Doeblin factor
  double doeblin = 0.0;
  for (Eigen::Index b = 0; b < 6; ++b) doeblin += model.kernel.matrix().col(b).minCoeff();
  for (std::size_t n = 1; n < 12; ++n) EXPECT_LE(beta[n + 1], (1.0 - doeblin) * beta[n] + 1e-15);
  EXPECT_LT(beta[12], 1e-3);
}

TEST(Mixing, HiddenChainCoefficients) {
  fe::Matrix k(2, 2);
  k << 0.9, 0.1, 0.3, 0.7;
  fe::Vector pi0(2);
  pi0 << 0.75, 0.25;
  const auto c = fe::chain_mixing(k, pi0, 5);
  // eigenvalue 0.6: ||K^n(z,.) - pi0|| = 2 pi0(other) 0.6^n
  for (std::size_t n = 0; n <= 5; ++n) {
    EXPECT_NEAR(c[n], (0.75 * 2 * 0.25 + 0.25 * 2 * 0.75) * std::pow(0.6, static_cast<double>(n)), 1e-12);
  }
}

TEST(Assumptions, NoisyCounterexamplePassesAll) {
  const auto model = fe::build_example_1_1_noisy(0.1);
  const auto r = fe::assess_assumptions(model.kernel, model.law);
  EXPECT_TRUE(r.nondegenerate());
  EXPECT_TRUE(r.product.holds);
  EXPECT_TRUE(r.marginal_ergodic());
  EXPECT_TRUE(r.reversed_marginal_ergodic());
  EXPECT_TRUE(r.absolutely_regular());
  EXPECT_TRUE(r.reversed_nondegenerate());
  EXPECT_TRUE(r.main_assumptions_hold());
  for (const auto& n : r.nstep) EXPECT_TRUE(n.holds);
  EXPECT_NO_THROW(fe::require_main_assumptions(model.kernel, model.law));
}

TEST(Assumptions, CounterexampleRefuted) {
  const auto model = fe::build_example_1_1();
  const auto r = fe::assess_assumptions(model.kernel, model.law);
  EXPECT_FALSE(r.nondegenerate());
  EXPECT_FALSE(r.product.holds);
  EXPECT_FALSE(r.main_assumptions_hold());
  EXPECT_THROW(fe::require_main_assumptions(model.kernel, model.law), fe::AssumptionNotVerified);
}

TEST(Assumptions, ReversedNondegeneracyOnErgodicNondegenerateModels) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto model = fe::random_model({3, 2, true, seed, 0.3});
    const auto r = fe::assess_assumptions(model.kernel, model.law);
    if (!r.nondegenerate() || !r.marginal_ergodic()) continue;
    EXPECT_TRUE(r.reversed_nondegenerate()) << "seed " << seed;
  }
}

TEST(Assumptions, NonMixingChainFailsGate) {
  // deterministic rotation of the hidden state: periodic, never mixes
  fe::Matrix p = fe::Matrix::Zero(4, 4);
  const auto s = fe::StateSpace::numbered(2, 2);
  for (std::size_t z = 0; z < 2; ++z) {
    for (std::size_t w = 0; w < 2; ++w) {
      for (std::size_t w2 = 0; w2 < 2; ++w2) p(s.index(z, w), s.index(1 - z, w2)) = 0.5;
    }
  }
  const auto k = fe::validate_kernel(p, s);
  const auto law = fe::stationary_law(k);
  EXPECT_TRUE(fe::detect_nondegeneracy(k).nondegenerate());
  EXPECT_THROW(fe::require_main_assumptions(k, law), fe::AssumptionNotVerified);
}
