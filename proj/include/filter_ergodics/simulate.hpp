#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kernel.hpp"
#include "rng.hpp"

namespace filter_ergodics {

struct PathSample {
  std::vector<std::size_t> xs;
  std::vector<std::size_t> ys;
  std::uint64_t seed = 0;

  std::size_t length() const noexcept { return xs.size(); }
};

/// Draws one joint state from a probability vector over E x F.
inline std::size_t sample_state(Rng& rng, const Vector& law) {
  return rng.categorical(std::span<const double>(law.data(), static_cast<std::size_t>(law.size())));
}

/// Samples (X_0, Y_0) from `initial` and then `horizon` kernel steps, giving
/// horizon + 1 states.
inline PathSample simulate_path(const JointKernel& kernel, const Vector& initial, std::size_t horizon,
                                std::uint64_t seed) {
  if (horizon < 1) throw ValidationError("horizon must be at least 1");
  const StateSpace& s = kernel.space();
  // Row-major copy so each step reads a contiguous row.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = kernel.matrix();
  const std::size_t n = s.size();
  Rng rng(seed);
  PathSample path;
  path.seed = seed;
  path.xs.reserve(horizon + 1);
  path.ys.reserve(horizon + 1);
  std::size_t a = sample_state(rng, initial);
  path.xs.push_back(s.hidden_of(a));
  path.ys.push_back(s.observed_of(a));
  for (std::size_t t = 0; t < horizon; ++t) {
    a = rng.categorical(std::span<const double>(rows.data() + a * n, n));
    path.xs.push_back(s.hidden_of(a));
    path.ys.push_back(s.observed_of(a));
  }
  return path;
}

}  // namespace filter_ergodics
