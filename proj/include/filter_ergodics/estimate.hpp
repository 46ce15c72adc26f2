#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "assumptions.hpp"
#include "lifts.hpp"
#include "rng.hpp"

namespace filter_ergodics {

/// How Pi_0 is chosen from the first observation: either the conditional
/// pi_{Y_0} of the stationary law, or a user kernel rho(y, .) from F to P(E)
/// given as an |F| x |E| row-stochastic matrix.
struct FilterInit {
  std::string name = "stationary";
  std::optional<Matrix> kernel;

  static FilterInit stationary() { return {}; }
  static FilterInit from_kernel(std::string name, Matrix rho) { return {std::move(name), std::move(rho)}; }
  static FilterInit uniform(const StateSpace& s) {
    return from_kernel("uniform", Matrix::Constant(static_cast<Eigen::Index>(s.observed_size()),
                                                   static_cast<Eigen::Index>(s.hidden_size()),
                                                   1.0 / static_cast<double>(s.hidden_size())));
  }
  static FilterInit point(const StateSpace& s, std::size_t z) {
    Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(s.observed_size()),
                              static_cast<Eigen::Index>(s.hidden_size()));
    rho.col(static_cast<Eigen::Index>(z)).setOnes();
    return from_kernel("point:" + s.hidden_labels()[z], std::move(rho));
  }

  FilterState initial(const StateSpace& s, const Vector& pi, std::size_t y0) const {
    if (!kernel) return conditional_given_observation(s, pi, y0);
    FilterState out{std::vector<double>(s.hidden_size())};
    for (std::size_t z = 0; z < s.hidden_size(); ++z) out.probs[z] = (*kernel)(y0, z);
    return out;
  }
};

struct EstimateOptions {
  FilterInit init;
  std::size_t samples = 100'000;
  std::size_t burn_in = 1'000;
  std::uint64_t seed = 42;
  LiftKind lift = LiftKind::kPair;
  bool allow_unverified = false;
};

/// Simulates the stationary chain from pi, runs the filter from init(Y_0),
/// discards `burn_in` steps and keeps the next `samples` lifted states as
/// equally weighted atoms, in sampling order.
inline EmpiricalLiftMeasure estimate_invariant(const JointKernel& kernel, const StationaryLaw& law,
                                               const EstimateOptions& opt) {
  const StateSpace& s = kernel.space();
  if (opt.init.kernel && (opt.init.kernel->rows() != static_cast<Eigen::Index>(s.observed_size()) ||
                          opt.init.kernel->cols() != static_cast<Eigen::Index>(s.hidden_size()))) {
    throw ValidationError("filter initialization kernel must be |F| x |E|");
  }
  if (!opt.allow_unverified) require_main_assumptions(kernel, law);
  if (opt.samples == 0) throw ValidationError("samples must be positive");

  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = kernel.matrix();
  const std::size_t n = s.size();
  Rng rng(opt.seed);
  std::size_t a = rng.categorical(std::span<const double>(law.pi.data(), n));
  FilterState nu = opt.init.initial(s, law.pi, s.observed_of(a));

  EmpiricalLiftMeasure m;
  m.kind = opt.lift;
  m.provenance = LiftProvenance{opt.seed, opt.burn_in, opt.samples};
  m.atoms.reserve(opt.samples);
  const double w = 1.0 / static_cast<double>(opt.samples);
  const std::size_t total = opt.burn_in + opt.samples;
  for (std::size_t t = 0;; ++t) {
    if (t >= opt.burn_in) {
      std::optional<std::size_t> x;
      if (opt.lift == LiftKind::kTriple) x = s.hidden_of(a);
      m.atoms.push_back({nu, x, s.observed_of(a), w});
    }
    if (t + 1 == total) break;
    const std::size_t next = rng.categorical(std::span<const double>(rows.data() + a * n, n));
    nu = filter_update(kernel, nu, s.observed_of(a), s.observed_of(next));
    a = next;
  }
  return m;
}

}  // namespace filter_ergodics
