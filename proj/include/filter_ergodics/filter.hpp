#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "kernel.hpp"

namespace filter_ergodics {

/// A probability vector over the hidden space E.
struct FilterState {
  std::vector<double> probs;

  std::size_t size() const noexcept { return probs.size(); }
  double operator[](std::size_t z) const { return probs[z]; }

  static FilterState point_mass(std::size_t size, std::size_t z) {
    FilterState s{std::vector<double>(size, 0.0)};
    s.probs[z] = 1.0;
    return s;
  }
  static FilterState uniform(std::size_t size) {
    return FilterState{std::vector<double>(size, 1.0 / static_cast<double>(size))};
  }

  friend bool operator==(const FilterState&, const FilterState&) = default;
};

inline double tv_distance(const FilterState& a, const FilterState& b) {
  double d = 0.0;
  for (std::size_t z = 0; z < a.size(); ++z) d += std::abs(a.probs[z] - b.probs[z]);
  return d;
}

/// Result of one filter step: the posterior and the predictive probability of
/// y1 given the prior filter and y0.
struct FilterStep {
  FilterState state;
  double predictive = 0.0;
};

/// nu'(z') proportional to sum_z nu(z) P((z,y0),(z',y1)). Because P = g P0 Q,
/// the Q(y0, y1) factor cancels in the normalization, so this is the update
/// map U of the filter.
inline FilterStep filter_step(const JointKernel& kernel, const FilterState& nu, std::size_t y0,
                              std::size_t y1) {
  const StateSpace& s = kernel.space();
  const std::size_t ne = s.hidden_size();
  FilterStep out{FilterState{std::vector<double>(ne, 0.0)}, 0.0};
  for (std::size_t z = 0; z < ne; ++z) {
    const double p = nu.probs[z];
    if (p == 0.0) continue;
    const std::size_t a = s.index(z, y0);
    for (std::size_t z2 = 0; z2 < ne; ++z2) out.state.probs[z2] += p * kernel(a, s.index(z2, y1));
  }
  double total = 0.0;
  for (double v : out.state.probs) total += v;
  if (!(total > 0.0)) throw ImpossibleObservation(y0, y1);
  for (double& v : out.state.probs) v /= total;
  out.predictive = total;
  return out;
}

inline FilterState filter_update(const JointKernel& kernel, const FilterState& nu, std::size_t y0,
                                 std::size_t y1) {
  return filter_step(kernel, nu, y0, y1).state;
}

/// mu_y: conditional law of the hidden component of `joint` given observation y.
inline FilterState conditional_given_observation(const StateSpace& s, const Vector& joint,
                                                 std::size_t y) {
  FilterState out{std::vector<double>(s.hidden_size(), 0.0)};
  double total = 0.0;
  for (std::size_t z = 0; z < s.hidden_size(); ++z) {
    out.probs[z] = joint(s.index(z, y));
    total += out.probs[z];
  }
  if (!(total > 0.0)) {
    throw UndefinedConditional("initial law gives zero mass to observation " +
                               s.observed_labels()[y]);
  }
  for (double& v : out.probs) v /= total;
  return out;
}

struct FilterRun {
  std::vector<FilterState> states;
  /// log P(Y_0..Y_n = y_0..y_n) under the initial law, cumulative in n.
  std::vector<double> log_likelihood;
};

/// Pi_0 = mu_{y(0)}, Pi_n = U(Pi_{n-1}, y(n-1), y(n)).
inline FilterRun run_filter(const JointKernel& kernel, const Vector& mu, std::span<const std::size_t> ys) {
  if (ys.empty()) throw ValidationError("observation sequence is empty");
  const StateSpace& s = kernel.space();
  FilterRun run;
  run.states.reserve(ys.size());
  run.log_likelihood.reserve(ys.size());
  run.states.push_back(conditional_given_observation(s, mu, ys[0]));
  run.log_likelihood.push_back(std::log(observed_marginal(s, mu)(ys[0])));
  for (std::size_t n = 1; n < ys.size(); ++n) {
    FilterStep step = filter_step(kernel, run.states.back(), ys[n - 1], ys[n]);
    run.log_likelihood.push_back(run.log_likelihood.back() + std::log(step.predictive));
    run.states.push_back(std::move(step.state));
  }
  return run;
}

/// Runs the recursion from an explicit Pi_0 (no conditioning step).
inline std::vector<FilterState> run_filter_from(const JointKernel& kernel, FilterState initial,
                                                std::span<const std::size_t> ys) {
  std::vector<FilterState> out;
  out.reserve(ys.size());
  out.push_back(std::move(initial));
  for (std::size_t n = 1; n < ys.size(); ++n) {
    out.push_back(filter_update(kernel, out.back(), ys[n - 1], ys[n]));
  }
  return out;
}

}  // namespace filter_ergodics
