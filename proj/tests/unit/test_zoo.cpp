#include <gtest/gtest.h>

#include "filter_ergodics/assumptions.hpp"
#include "filter_ergodics/zoo.hpp"

namespace fe = filter_ergodics;

namespace {

std::vector<fe::ModelSpec> all_catalog_models() {
  std::vector<fe::ModelSpec> out;
  for (const auto& e : fe::zoo_catalog()) out.push_back(fe::build_zoo_model(e.name));
  out.push_back(fe::random_model({4, 3, false, 11, 0.3}));
  out.push_back(fe::random_model({2, 5, true, 12, 0.2}));
  return out;
}

}  // namespace

TEST(Zoo, EveryModelHasAStationaryLaw) {
  for (const auto& m : all_catalog_models()) {
    SCOPED_TRACE(m.name);
    EXPECT_LT(fe::stationarity_residual(m.kernel, m.law.pi), 1e-10);
    EXPECT_NEAR(m.law.pi.sum(), 1.0, 1e-12);
    EXPECT_GE(m.law.pi.minCoeff(), 0.0);
  }
}

TEST(Zoo, EmittedFactorizationsValidate) {
  for (const auto& m : all_catalog_models()) {
    if (!m.factorization) continue;
    SCOPED_TRACE(m.name);
    const auto r = fe::validate_factorization(m.kernel, *m.factorization);
    EXPECT_TRUE(r.valid) << r.message;
    EXPECT_LT(r.max_reconstruction_error, 1e-12);
    EXPECT_TRUE(fe::detect_nondegeneracy(m.kernel).nondegenerate());
  }
}

TEST(Zoo, AssumptionReports) {
  struct Expect {
    const char* name;
    bool nondegenerate;
    bool main;
  };
  for (const Expect e : {Expect{"example_1_1", false, false}, Expect{"example_1_1_noisy", true, true},
                         Expect{"example_1_2_discrete", false, false}, Expect{"generalized_hmm_demo", true, true},
                         Expect{"correlated_noise_hmm_demo", true, true}, Expect{"random", true, true}}) {
    SCOPED_TRACE(e.name);
    const auto m = fe::build_zoo_model(e.name);
    const auto r = fe::assess_assumptions(m.kernel, m.law);
    EXPECT_EQ(r.nondegenerate(), e.nondegenerate);
    EXPECT_EQ(r.main_assumptions_hold(), e.main);
  }
}

TEST(Zoo, SignChainMatchesCounterexample) {
  const auto ex2 = fe::build_example_1_2_discrete();
  const auto ex1 = fe::build_example_1_1();
  const auto embedded = fe::sign_embedded_chain(ex2.kernel);
  EXPECT_EQ(embedded.space().hidden_labels(), ex1.kernel.space().hidden_labels());
  EXPECT_EQ((embedded.matrix() - ex1.kernel.matrix()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THROW(fe::sign_embedded_chain(fe::random_model({4, 2, false, 3, 0.0}).kernel), fe::ValidationError);
}

TEST(Zoo, NoisyModelApproachesCounterexample) {
  const auto ex1 = fe::build_example_1_1();
  double previous = 2.0;
  for (double eps : {0.25, 0.1, 1e-2, 1e-4, 1e-8}) {
    const auto m = fe::build_example_1_1_noisy(eps);
    double worst = 0.0;
    for (Eigen::Index a = 0; a < 8; ++a) {
      worst = std::max(worst, (m.kernel.matrix().row(a) - ex1.kernel.matrix().row(a)).cwiseAbs().sum());
    }
    EXPECT_NEAR(worst, 2.0 * eps, 1e-12);
    EXPECT_LT(worst, previous);
    previous = worst;
  }
  EXPECT_THROW(fe::build_example_1_1_noisy(0.0), fe::EpsilonOutOfRange);
  EXPECT_THROW(fe::build_example_1_1_noisy(0.5), fe::EpsilonOutOfRange);
  EXPECT_THROW(fe::build_zoo_model("example_1_1_noisy", {{"epsilon", "-1"}}), fe::EpsilonOutOfRange);
}

TEST(Zoo, GeneralizedHmmHiddenMarginalIsP0) {
  const auto m = fe::build_generalized_hmm_demo();
  ASSERT_TRUE(m.hidden_kernel.has_value());
  const auto& s = m.kernel.space();
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t z2 = 0; z2 < s.hidden_size(); ++z2) {
      double p = 0.0;
      for (std::size_t w2 = 0; w2 < s.observed_size(); ++w2) p += m.kernel(a, s.index(z2, w2));
      EXPECT_NEAR(p, (*m.hidden_kernel)(s.hidden_of(a), z2), 1e-12);
    }
  }
}

TEST(Zoo, GeneralizedHmmWithFlatDensityIsProduct) {
  const auto s = fe::StateSpace::numbered(2, 3);
  fe::Matrix p0(2, 2);
  p0 << 0.3, 0.7, 0.6, 0.4;
  fe::Vector phi(3);
  phi << 0.2, 0.3, 0.5;
  const auto m = fe::build_generalized_hmm(s, p0, fe::Matrix::Ones(6, 6), phi);
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = 0; b < 6; ++b) {
      EXPECT_NEAR(m.kernel(a, b), p0(s.hidden_of(a), s.hidden_of(b)) * phi(s.observed_of(b)), 1e-15);
    }
  }
  fe::Matrix bad = fe::Matrix::Ones(6, 6);
  bad(0, 0) = 1.5;
  EXPECT_THROW(fe::build_generalized_hmm(s, p0, bad, phi), fe::ConstraintViolation);
}

TEST(Zoo, CorrelatedNoiseIdentities) {
  const auto m = fe::build_correlated_noise_hmm_demo();
  ASSERT_TRUE(m.hidden_kernel.has_value());
  const auto& s = m.kernel.space();
  const fe::Matrix& tilde = *m.hidden_kernel;
  for (Eigen::Index z = 0; z < tilde.rows(); ++z) EXPECT_NEAR(tilde.row(z).sum(), 1.0, 1e-12);
  // the hidden marginal of pi is invariant for tilde P0
  const fe::Vector pe = fe::hidden_marginal(s, m.law.pi);
  EXPECT_LT((pe.transpose() * tilde - pe.transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Zoo, CorrelatedNoiseWithoutFeedbackIsGeneralizedHmm) {
  const auto s = fe::StateSpace::numbered(2, 2);
  fe::Matrix gx(4, 2);
  for (std::size_t a = 0; a < 4; ++a) {
    gx(a, 0) = s.hidden_of(a) == 0 ? 0.8 : 0.35;
    gx(a, 1) = 1.0 - gx(a, 0);
  }
  fe::Matrix gy(2, 2);
  gy << 1.2, 0.8, 0.4, 1.6;
  fe::Vector phi(2);
  phi << 0.5, 0.5;
  const auto cn = fe::build_correlated_noise_hmm(s, gx, gy, phi);
  fe::Matrix p0(2, 2);
  p0 << 0.8, 0.2, 0.35, 0.65;
  fe::Matrix dens(4, 4);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) dens(a, b) = gy(s.hidden_of(b), s.observed_of(b));
  }
  const auto gh = fe::build_generalized_hmm(s, p0, dens, phi);
  EXPECT_LT((cn.kernel.matrix() - gh.kernel.matrix()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((*cn.hidden_kernel - p0).cwiseAbs().maxCoeff(), 1e-15);

  fe::Matrix bad_gy = gy;
  bad_gy(0, 0) = 2.0;
  EXPECT_THROW(fe::build_correlated_noise_hmm(s, gx, bad_gy, phi), fe::NormalizationViolation);
}

TEST(Zoo, RandomModelsAreSeeded) {
  const auto a = fe::random_model({3, 4, true, 77, 0.1});
  const auto b = fe::random_model({3, 4, true, 77, 0.1});
  const auto c = fe::random_model({3, 4, true, 78, 0.1});
  EXPECT_EQ(a.kernel.matrix(), b.kernel.matrix());
  EXPECT_NE(a.kernel.matrix(), c.kernel.matrix());
  EXPECT_TRUE(a.factorization.has_value());
  EXPECT_FALSE(fe::random_model({3, 4, false, 77, 0.1}).factorization.has_value());
}

TEST(Zoo, CatalogLookup) {
  EXPECT_THROW(fe::build_zoo_model("nope"), fe::ValidationError);
  const auto m = fe::build_zoo_model("random", {{"hidden", "2"}, {"observed", "3"}, {"seed", "5"}});
  EXPECT_EQ(m.kernel.space().hidden_size(), 2u);
  EXPECT_EQ(m.kernel.space().observed_size(), 3u);
  EXPECT_EQ(fe::parse_family(fe::family_name(m.family)), m.family);
}
