#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "filter.hpp"

namespace filter_ergodics {

namespace detail {

/// Backward messages b_n(x) for n = N..0, each rescaled to sum 1. Rescaling
/// does not change the normalized smoothed marginals.
inline std::vector<std::vector<double>> backward_messages(const JointKernel& kernel,
                                                          std::span<const std::size_t> ys) {
  const StateSpace& s = kernel.space();
  const std::size_t ne = s.hidden_size();
  const std::size_t len = ys.size();
  std::vector<std::vector<double>> b(len, std::vector<double>(ne, 1.0 / static_cast<double>(ne)));
  for (std::size_t n = len - 1; n-- > 0;) {
    double total = 0.0;
    for (std::size_t x = 0; x < ne; ++x) {
      double v = 0.0;
      const std::size_t a = s.index(x, ys[n]);
      for (std::size_t x2 = 0; x2 < ne; ++x2) v += kernel(a, s.index(x2, ys[n + 1])) * b[n + 1][x2];
      b[n][x] = v;
      total += v;
    }
    if (total > 0.0) {
      for (double& v : b[n]) v /= total;
    }
  }
  return b;
}

}  // namespace detail

/// Smoothed hidden marginals P_{z,y}(X_n = . | y_0..y_N) for n = 0..N, for the
/// chain started at (z, y_0). Forward messages are rescaled every step.
inline std::vector<FilterState> smoothed_marginals(const JointKernel& kernel,
                                                   std::span<const std::size_t> ys, std::size_t z,
                                                   const std::vector<std::vector<double>>& backward) {
  const StateSpace& s = kernel.space();
  const std::size_t ne = s.hidden_size();
  std::vector<FilterState> out;
  out.reserve(ys.size());
  std::vector<double> fwd(ne, 0.0);
  fwd[z] = 1.0;
  for (std::size_t n = 0; n < ys.size(); ++n) {
    if (n > 0) {
      std::vector<double> next(ne, 0.0);
      for (std::size_t x = 0; x < ne; ++x) {
        if (fwd[x] == 0.0) continue;
        const std::size_t a = s.index(x, ys[n - 1]);
        for (std::size_t x2 = 0; x2 < ne; ++x2) next[x2] += fwd[x] * kernel(a, s.index(x2, ys[n]));
      }
      double total = 0.0;
      for (double v : next) total += v;
      if (!(total > 0.0)) throw ZeroLikelihood(z);
      for (double& v : next) v /= total;
      fwd = std::move(next);
    }
    FilterState smooth{std::vector<double>(ne)};
    double total = 0.0;
    for (std::size_t x = 0; x < ne; ++x) {
      smooth.probs[x] = fwd[x] * backward[n][x];
      total += smooth.probs[x];
    }
    if (!(total > 0.0)) throw ZeroLikelihood(z);
    for (double& v : smooth.probs) v /= total;
    out.push_back(std::move(smooth));
  }
  return out;
}

/// D_n = ||P_{z,y}(X_n in .) - P_{z',y}(X_n in .)||_TV for n = 0..N, both laws
/// conditioned on the same finite observation window y_0..y_N.
inline std::vector<double> smoother_merging(const JointKernel& kernel, std::span<const std::size_t> ys,
                                            std::size_t z, std::size_t z_prime) {
  if (ys.empty()) throw ValidationError("observation window is empty");
  const auto backward = detail::backward_messages(kernel, ys);
  const auto a = smoothed_marginals(kernel, ys, z, backward);
  const auto b = smoothed_marginals(kernel, ys, z_prime, backward);
  std::vector<double> d(ys.size());
  for (std::size_t n = 0; n < d.size(); ++n) d[n] = tv_distance(a[n], b[n]);
  return d;
}

}  // namespace filter_ergodics
