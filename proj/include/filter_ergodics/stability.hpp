#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "assumptions.hpp"
#include "filter.hpp"
#include "parallel.hpp"
#include "simulate.hpp"

namespace filter_ergodics {

struct StabilityOptions {
  std::size_t horizon = 300;
  std::size_t replicates = 100;
  std::uint64_t seed = 42;
  std::size_t threads = 1;
  /// Run even when nondegeneracy/ergodicity cannot be verified (counterexamples).
  bool allow_unverified = false;
};

/// d_n = ||Pi_n^mu - Pi_n^pi||_TV for n = 0..horizon, one row per replicate.
struct StabilityTrace {
  std::vector<std::vector<double>> distances;
  std::vector<std::uint64_t> seeds;
  std::size_t horizon = 0;

  double mean_at(std::size_t n) const {
    double s = 0.0;
    for (const auto& d : distances) s += d[n];
    return distances.empty() ? 0.0 : s / static_cast<double>(distances.size());
  }
  double max_at(std::size_t n) const {
    double m = 0.0;
    for (const auto& d : distances) m = std::max(m, d[n]);
    return m;
  }
};

/// Samples observation paths under P^mu and runs the filter from mu_{Y_0} and
/// from pi_{Y_0} on each. Replicate r uses seed derive_seed(options.seed, r).
inline StabilityTrace stability_experiment(const JointKernel& kernel, const StationaryLaw& law,
                                           const Vector& mu, const StabilityOptions& options) {
  const StateSpace& s = kernel.space();
  if (mu.size() != static_cast<Eigen::Index>(s.size())) {
    throw ValidationError("initial law has wrong dimension");
  }
  const Vector mu_f = observed_marginal(s, mu);
  const Vector pi_f = observed_marginal(s, law.pi);
  for (std::size_t w = 0; w < s.observed_size(); ++w) {
    if (mu_f(w) > 0.0 && !(pi_f(w) > 0.0)) {
      throw SupportViolation("initial law charges observation " + s.observed_labels()[w] +
                             " which the stationary law does not");
    }
  }
  if (!options.allow_unverified) require_main_assumptions(kernel, law);

  StabilityTrace trace;
  trace.horizon = options.horizon;
  trace.distances.resize(options.replicates);
  trace.seeds.resize(options.replicates);
  for (std::size_t r = 0; r < options.replicates; ++r) trace.seeds[r] = derive_seed(options.seed, r);

  parallel_for(options.replicates, options.threads, [&](std::size_t r) {
    const PathSample path = simulate_path(kernel, mu, options.horizon, trace.seeds[r]);
    const FilterRun from_mu = run_filter(kernel, mu, path.ys);
    const FilterRun from_pi = run_filter(kernel, law.pi, path.ys);
    std::vector<double> d(path.length());
    for (std::size_t n = 0; n < d.size(); ++n) d[n] = tv_distance(from_mu.states[n], from_pi.states[n]);
    trace.distances[r] = std::move(d);
  });
  return trace;
}

}  // namespace filter_ergodics
