#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "error.hpp"
#include "rng.hpp"

namespace filter_ergodics {

/// Gaussian filter belief N(m, s2) on the first hidden coordinate.
struct KalmanState {
  double m = 0.0;
  double s2 = 1.0;
};

/// One Kalman step for X_n = 2 X_{n-1} + xi_n, Y_n = X_n + eta_n with unit
/// noise variances.
inline KalmanState kalman_step(const KalmanState& s, double y) {
  const double m_pred = 2.0 * s.m;
  const double s_pred = 4.0 * s.s2 + 1.0;
  const double gain = s_pred / (s_pred + 1.0);
  return {m_pred + gain * (y - m_pred), (1.0 - gain) * s_pred};
}

/// Positive root of 4 s^2 - 2 s - 1 = 0.
inline double riccati_fixed_point() { return (1.0 + std::sqrt(5.0)) / 4.0; }

inline std::vector<double> riccati_iterates(double s0, std::size_t steps) {
  std::vector<double> out{s0};
  KalmanState s{0.0, s0};
  for (std::size_t n = 0; n < steps; ++n) {
    s = kalman_step(s, 0.0);
    out.push_back(s.s2);
  }
  return out;
}

struct KalmanBranchSummary {
  /// Second hidden coordinate charged by the filter on this branch.
  int filter_x2 = 0;
  /// Empirical mean of the true second coordinate along the simulated paths.
  double hidden_x2_mean = 0.0;
  double m_mean = 0.0;
  double m_variance = 0.0;
  double x1_mean = 0.0;
  double y_mean = 0.0;
  /// Mean squared error of m_n against the true first coordinate.
  double mse = 0.0;
  /// Variance of m_n in the limit implied by the fixed-point recursion.
  double predicted_m_variance = 0.0;
};

struct KalmanDemoReport {
  std::size_t horizon = 0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  double s0 = 1.0;
  std::vector<double> riccati;
  double fixed_point = 0.0;
  bool riccati_monotone = true;
  /// First n with |s_n - s*| < 1e-12, or the iterate count if never reached.
  std::size_t converged_at = 0;
  KalmanBranchSummary branch1;
  KalmanBranchSummary branch0;
  /// Replicate 0: means of both branch filters along one path.
  std::vector<double> trace_m_branch1;
  std::vector<double> trace_m_branch0;
};

/// Runs the filter of the stationary model X^1_n = xi_n, X^2_n = 0 from two
/// initializations: one that believes X^2 = 1 (Kalman recursion of the
/// doubling model) and the stationary one (posterior N(y/2, 1/2)). Branch
/// statistics are taken at the horizon across replicates.
inline KalmanDemoReport kalman_lambda_demo(std::size_t horizon, std::size_t replicates, std::uint64_t seed,
                                           double s0 = 1.0) {
  if (horizon < 1) throw ValidationError("horizon must be at least 1");
  if (replicates < 1) throw ValidationError("replicates must be at least 1");
  if (!(s0 > 0.0)) throw ValidationError("initial variance must be positive");
  KalmanDemoReport r;
  r.horizon = horizon;
  r.replicates = replicates;
  r.seed = seed;
  r.s0 = s0;
  r.fixed_point = riccati_fixed_point();
  r.riccati = riccati_iterates(s0, std::max<std::size_t>(horizon, 60));
  r.converged_at = r.riccati.size();
  for (std::size_t n = 0; n < r.riccati.size(); ++n) {
    if (n > 0 && (r.riccati[n] - r.riccati[n - 1]) * (r.riccati[1] - r.riccati[0]) < 0.0) r.riccati_monotone = false;
    if (r.converged_at == r.riccati.size() && std::abs(r.riccati[n] - r.fixed_point) < 1e-12) r.converged_at = n;
  }
  r.riccati.resize(horizon + 1);

  struct Acc {
    double m = 0, m2 = 0, x = 0, y = 0, se = 0;
  } a1, a0;
  for (std::size_t rep = 0; rep < replicates; ++rep) {
    Rng rng(derive_seed(seed, rep));
    KalmanState k1{0.0, s0};
    double m0 = 0.0, x = 0.0, y = 0.0;
    for (std::size_t n = 0; n <= horizon; ++n) {
      x = rng.normal();
      y = x + rng.normal();
      if (n > 0) k1 = kalman_step(k1, y);
      m0 = y / 2.0;
      if (rep == 0) {
        r.trace_m_branch1.push_back(k1.m);
        r.trace_m_branch0.push_back(m0);
      }
    }
    a1.m += k1.m, a1.m2 += k1.m * k1.m, a1.x += x, a1.y += y, a1.se += (k1.m - x) * (k1.m - x);
    a0.m += m0, a0.m2 += m0 * m0, a0.x += x, a0.y += y, a0.se += (m0 - x) * (m0 - x);
  }
  const double count = static_cast<double>(replicates);
  auto finish = [&](const Acc& a, int x2) {
    KalmanBranchSummary b;
    b.filter_x2 = x2;
    b.hidden_x2_mean = 0.0;
    b.m_mean = a.m / count;
    b.m_variance = a.m2 / count - b.m_mean * b.m_mean;
    b.x1_mean = a.x / count;
    b.y_mean = a.y / count;
    b.mse = a.se / count;
    return b;
  };
  r.branch1 = finish(a1, 1);
  r.branch0 = finish(a0, 0);
  // In the limit m' = c m + k y with y ~ N(0, 2) independent of m.
  const double s_pred = 4.0 * r.fixed_point + 1.0;
  const double k = s_pred / (s_pred + 1.0);
  const double c = 2.0 * (1.0 - k);
  r.branch1.predicted_m_variance = 2.0 * k * k / (1.0 - c * c);
  r.branch0.predicted_m_variance = 0.5;
  return r;
}

}  // namespace filter_ergodics
