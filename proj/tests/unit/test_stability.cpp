#include <gtest/gtest.h>

#include "filter_ergodics/stability.hpp"
#include "filter_ergodics/zoo.hpp"

namespace fe = filter_ergodics;

namespace {

fe::Vector point_law(const fe::StateSpace& s, std::size_t z, std::size_t w) {
  fe::Vector mu = fe::Vector::Zero(static_cast<Eigen::Index>(s.size()));
  mu(s.index(z, w)) = 1.0;
  return mu;
}

}  // namespace

TEST(DeriveSeed, DistinctAndStable) {
  EXPECT_EQ(fe::derive_seed(42, 0), fe::derive_seed(42, 0));
  EXPECT_NE(fe::derive_seed(42, 0), fe::derive_seed(42, 1));
  EXPECT_NE(fe::derive_seed(42, 1), fe::derive_seed(43, 0));
}

TEST(Stability, StationaryStartGivesZeroTrace) {
  const auto m = fe::random_model({3, 2, true, 6, 0.0});
  fe::StabilityOptions opt;
  opt.horizon = 60;
  opt.replicates = 10;
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    opt.seed = seed;
    const auto t = fe::stability_experiment(m.kernel, m.law, m.law.pi, opt);
    for (const auto& d : t.distances) {
      for (double v : d) EXPECT_EQ(v, 0.0);
    }
  }
}

TEST(Stability, CounterexampleNeverForgets) {
  const auto m = fe::build_example_1_1();
  fe::StabilityOptions opt;
  opt.horizon = 100;
  opt.replicates = 20;
  opt.allow_unverified = true;
  const auto t = fe::stability_experiment(m.kernel, m.law, point_law(m.kernel.space(), 0, 0), opt);
  for (const auto& d : t.distances) {
    for (std::size_t n = 1; n <= 100; ++n) EXPECT_NEAR(d[n], 1.0, 1e-12);
  }
}

TEST(Stability, SignModelNeverForgets) {
  const auto m = fe::build_example_1_2_discrete();
  fe::StabilityOptions opt;
  opt.horizon = 100;
  opt.replicates = 20;
  opt.allow_unverified = true;
  const auto t = fe::stability_experiment(m.kernel, m.law, point_law(m.kernel.space(), 0, 0), opt);
  for (const auto& d : t.distances) {
    for (std::size_t n = 2; n <= 100; ++n) EXPECT_NEAR(d[n], 1.0, 1e-12);
  }
}

TEST(Stability, GateRejectsCounterexampleWithoutOverride) {
  const auto m = fe::build_example_1_1();
  fe::StabilityOptions opt;
  opt.horizon = 5;
  opt.replicates = 1;
  EXPECT_THROW(fe::stability_experiment(m.kernel, m.law, point_law(m.kernel.space(), 0, 0), opt),
               fe::AssumptionNotVerified);
}

TEST(Stability, SupportViolation) {
  // observation 1 is never produced in stationarity
  fe::Matrix p(4, 4);
  p << 0.5, 0.0, 0.5, 0.0,
       0.5, 0.0, 0.5, 0.0,
       0.5, 0.0, 0.5, 0.0,
       0.5, 0.0, 0.5, 0.0;
  const auto k = fe::validate_kernel(p, fe::StateSpace::numbered(2, 2));
  const auto law = fe::stationary_law(k);
  fe::StabilityOptions opt;
  opt.horizon = 3;
  opt.replicates = 1;
  opt.allow_unverified = true;
  EXPECT_THROW(fe::stability_experiment(k, law, point_law(k.space(), 0, 1), opt), fe::SupportViolation);
}

TEST(Stability, NoisyCounterexampleForgets) {
  const auto m = fe::build_example_1_1_noisy(0.1);
  fe::StabilityOptions opt;
  opt.horizon = 300;
  opt.replicates = 30;
  const auto t = fe::stability_experiment(m.kernel, m.law, point_law(m.kernel.space(), 0, 0), opt);
  EXPECT_LT(t.mean_at(300), 0.05);
  EXPECT_LT(t.max_at(300), 0.2);
  for (const auto& d : t.distances) {
    for (double v : d) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 2.0);
    }
  }
}

TEST(Stability, ThreadCountDoesNotChangeResults) {
  const auto m = fe::random_model({4, 3, true, 12, 0.0});
  fe::StabilityOptions opt;
  opt.horizon = 80;
  opt.replicates = 24;
  opt.seed = 5;
  const fe::Vector mu = point_law(m.kernel.space(), 1, 2);
  const auto serial = fe::stability_experiment(m.kernel, m.law, mu, opt);
  opt.threads = 8;
  const auto parallel = fe::stability_experiment(m.kernel, m.law, mu, opt);
  EXPECT_EQ(serial.distances, parallel.distances);
  EXPECT_EQ(serial.seeds, parallel.seeds);
  for (std::size_t r = 0; r < serial.seeds.size(); ++r) EXPECT_EQ(serial.seeds[r], fe::derive_seed(5, r));
}

TEST(ParallelFor, RethrowsLowestIndexError) {
  try {
    fe::parallel_for(50, 4, [](std::size_t i) {
      if (i == 7 || i == 30) throw std::runtime_error(std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "7");
  }
}
