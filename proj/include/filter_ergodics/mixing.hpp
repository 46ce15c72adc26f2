#pragma once

#include <cstddef>
#include <vector>

#include "stationary.hpp"

namespace filter_ergodics {

/// pi-averaged total-variation distances to stationarity after n steps.
/// Entry n of each vector is the coefficient at horizon n (entry 0 is the
/// trivial n = 0 value). All values lie in [0, 2].
struct MixingProfile {
  std::vector<double> alpha_fwd;  // hidden marginal, forward chain
  std::vector<double> alpha_rev;  // hidden marginal, reversed chain
  std::vector<double> beta;       // joint law (absolute regularity)

  std::size_t horizon() const noexcept { return beta.empty() ? 0 : beta.size() - 1; }
};

namespace detail {

inline void accumulate_mixing(const JointKernel& kernel, const Vector& pi, std::size_t n_max,
                              std::vector<double>* alpha, std::vector<double>* beta) {
  const StateSpace& s = kernel.space();
  const Vector pe = hidden_marginal(s, pi);
  const auto n = static_cast<Eigen::Index>(s.size());
  Matrix pn = Matrix::Identity(n, n);
  for (std::size_t step = 0; step <= n_max; ++step) {
    if (step > 0) pn = pn * kernel.matrix();
    double a_sum = 0.0, b_sum = 0.0;
    for (Eigen::Index a = 0; a < n; ++a) {
      if (pi(a) == 0.0) continue;
      const Vector row = pn.row(a).transpose();
      if (alpha) a_sum += pi(a) * tv_norm(hidden_marginal(s, row), pe);
      if (beta) b_sum += pi(a) * tv_norm(row, pi);
    }
    if (alpha) alpha->push_back(a_sum);
    if (beta) beta->push_back(b_sum);
  }
}

}  // namespace detail

/// Coefficient sequence for n = 0..n_max. beta uses the forward kernel only.
inline MixingProfile mixing_profile(const JointKernel& kernel, const StationaryLaw& law,
                                    std::size_t n_max) {
  MixingProfile m;
  detail::accumulate_mixing(kernel, law.pi, n_max, &m.alpha_fwd, &m.beta);
  const JointKernel rev = reverse_kernel(kernel, law);
  detail::accumulate_mixing(rev, law.pi, n_max, &m.alpha_rev, nullptr);
  return m;
}

/// beta_n computed from an arbitrary kernel with invariant law pi; used to
/// compare the forward and reversed chains.
inline std::vector<double> beta_coefficients(const JointKernel& kernel, const Vector& pi,
                                             std::size_t n_max) {
  std::vector<double> beta;
  detail::accumulate_mixing(kernel, pi, n_max, nullptr, &beta);
  return beta;
}

/// integral of ||K^n(z, .) - pi0|| pi0(dz) for n = 0..n_max, for a kernel on E
/// alone (the hidden-chain absolute-regularity premise of the structured model
/// classes).
inline std::vector<double> chain_mixing(const Matrix& k, const Vector& pi0, std::size_t n_max) {
  std::vector<double> out;
  Matrix kn = Matrix::Identity(k.rows(), k.cols());
  for (std::size_t step = 0; step <= n_max; ++step) {
    if (step > 0) kn = kn * k;
    double s = 0.0;
    for (Eigen::Index z = 0; z < k.rows(); ++z) {
      if (pi0(z) > 0.0) s += pi0(z) * (kn.row(z).transpose() - pi0).cwiseAbs().sum();
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace filter_ergodics
