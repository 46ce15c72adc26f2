#pragma once

#include <Eigen/QR>
#include <cstddef>
#include <optional>

#include "kernel.hpp"

namespace filter_ergodics {

enum class StationaryMethod { kLinearSolve, kPowerIteration, kSupplied };

/// An invariant probability vector over E x F together with what the solver
/// learned about the eigenvalue-1 eigenspace.
struct StationaryLaw {
  Vector pi;
  /// Dimension of the null space of (P^T - I); > 1 means pi is not unique.
  std::size_t eigenspace_dimension = 1;
  StationaryMethod method = StationaryMethod::kLinearSolve;

  bool unique() const noexcept { return eigenspace_dimension <= 1; }
};

struct StationaryOptions {
  double rank_tolerance = 1e-8;
  double residual_tolerance = 1e-10;
  std::size_t max_iterations = 1'000'000;
};

inline double stationarity_residual(const JointKernel& kernel, const Vector& pi) {
  return (kernel.matrix().transpose() * pi - pi).cwiseAbs().sum();
}

namespace detail {

inline bool clean_probability_vector(Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) < -1e-12 || !std::isfinite(v(i))) return false;
    if (v(i) < 0.0) v(i) = 0.0;
  }
  double s = v.sum();
  if (s <= 0.0) return false;
  v /= s;
  // solver noise on transient states would otherwise count as support
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!is_support(v(i))) v(i) = 0.0;
  }
  s = v.sum();
  if (s <= 0.0) return false;
  v /= s;
  return true;
}

/// Power iteration on the lazy chain (P + I) / 2, which shares P's invariant
/// laws and is aperiodic.
inline Vector lazy_power_iteration(const JointKernel& kernel, const StationaryOptions& opt) {
  const auto n = static_cast<Eigen::Index>(kernel.size());
  Vector pi = Vector::Constant(n, 1.0 / static_cast<double>(n));
  const Matrix pt = kernel.matrix().transpose();
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    Vector next = 0.5 * (pt * pi + pi);
    next /= next.sum();
    pi.swap(next);
    if (it % 16 == 0 && stationarity_residual(kernel, pi) < 0.1 * opt.residual_tolerance) return pi;
  }
  if (stationarity_residual(kernel, pi) < opt.residual_tolerance) return pi;
  throw NoConvergence(opt.max_iterations);
}

}  // namespace detail

/// Solves pi P = pi by a dense least-squares solve of [(P^T - I); 1^T] pi = [0; 1],
/// falling back to power iteration when the solve yields a non-probability vector
/// (typically when the invariant law is not unique).
inline StationaryLaw stationary_law(const JointKernel& kernel, const StationaryOptions& opt = {}) {
  const auto n = static_cast<Eigen::Index>(kernel.size());
  const Matrix a = kernel.matrix().transpose() - Matrix::Identity(n, n);

  Eigen::ColPivHouseholderQR<Matrix> rank_qr(a);
  rank_qr.setThreshold(opt.rank_tolerance);
  StationaryLaw law;
  law.eigenspace_dimension = static_cast<std::size_t>(n - rank_qr.rank());

  Matrix augmented(n + 1, n);
  augmented.topRows(n) = a;
  augmented.row(n).setOnes();
  Vector rhs = Vector::Zero(n + 1);
  rhs(n) = 1.0;
  Vector pi = augmented.colPivHouseholderQr().solve(rhs);

  if (detail::clean_probability_vector(pi) &&
      stationarity_residual(kernel, pi) < opt.residual_tolerance) {
    law.pi = std::move(pi);
    law.method = StationaryMethod::kLinearSolve;
    return law;
  }
  law.pi = detail::lazy_power_iteration(kernel, opt);
  detail::clean_probability_vector(law.pi);
  law.method = StationaryMethod::kPowerIteration;
  return law;
}

/// Wraps a user-supplied invariant vector after checking it.
inline StationaryLaw supplied_stationary_law(const JointKernel& kernel, Vector pi,
                                             const StationaryOptions& opt = {}) {
  if (pi.size() != static_cast<Eigen::Index>(kernel.size())) {
    throw ValidationError("pi has " + std::to_string(pi.size()) + " entries, expected " +
                          std::to_string(kernel.size()));
  }
  for (Eigen::Index i = 0; i < pi.size(); ++i) {
    if (pi(i) < 0.0) throw ValidationError("pi has a negative entry at " + std::to_string(i));
  }
  if (std::abs(pi.sum() - 1.0) > kRowSumTolerance) throw ValidationError("pi does not sum to 1");
  pi /= pi.sum();
  if (stationarity_residual(kernel, pi) >= opt.residual_tolerance) {
    throw ValidationError("supplied pi is not invariant for the kernel");
  }
  StationaryLaw law = stationary_law(kernel, opt);
  law.pi = std::move(pi);
  law.method = StationaryMethod::kSupplied;
  return law;
}

/// Time reversal P'(b, a) = pi(a) P(a, b) / pi(b) on supp pi; rows off the
/// support become self-loops.
inline JointKernel reverse_kernel(const JointKernel& kernel, const StationaryLaw& law) {
  const auto n = static_cast<Eigen::Index>(kernel.size());
  const Vector& pi = law.pi;
  Matrix rev = Matrix::Zero(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    if (!is_support(pi(b))) {
      rev(b, b) = 1.0;
      continue;
    }
    for (Eigen::Index a = 0; a < n; ++a) {
      if (is_support(pi(a))) rev(b, a) = pi(a) * kernel(a, b) / pi(b);
    }
  }
  return validate_kernel(std::move(rev), kernel.space());
}

struct ProductStructureReport {
  bool holds = false;
  /// h(z, w) = pi(z, w) / (pi_E(z) pi_F(w)) on supp pi_E x supp pi_F, zero elsewhere.
  Matrix density;
  std::optional<std::size_t> missing_state;  // joint index in supp pi_E x supp pi_F with pi = 0
};

inline ProductStructureReport product_structure_check(const StateSpace& space, const Vector& pi) {
  const Vector pe = hidden_marginal(space, pi);
  const Vector pf = observed_marginal(space, pi);
  ProductStructureReport r;
  r.holds = true;
  r.density = Matrix::Zero(static_cast<Eigen::Index>(space.hidden_size()),
                           static_cast<Eigen::Index>(space.observed_size()));
  for (std::size_t z = 0; z < space.hidden_size(); ++z) {
    for (std::size_t w = 0; w < space.observed_size(); ++w) {
      const double p = pi(space.index(z, w));
      const bool in_rect = is_support(pe(z)) && is_support(pf(w));
      if (in_rect) r.density(z, w) = p / (pe(z) * pf(w));
      if (in_rect != is_support(p) && r.holds) {
        r.holds = false;
        r.missing_state = space.index(z, w);
      }
    }
  }
  return r;
}

/// Restriction of the kernel to supp pi, available when supp pi is a product
/// set (then every supported row stays inside it).
inline std::optional<JointKernel> support_restriction(const JointKernel& kernel, const Vector& pi) {
  const StateSpace& space = kernel.space();
  if (!product_structure_check(space, pi).holds) return std::nullopt;
  const Vector pe = hidden_marginal(space, pi);
  const Vector pf = observed_marginal(space, pi);
  std::vector<std::size_t> hz, hw;
  std::vector<std::string> lz, lw;
  for (std::size_t z = 0; z < space.hidden_size(); ++z) {
    if (is_support(pe(z))) {
      hz.push_back(z);
      lz.push_back(space.hidden_labels()[z]);
    }
  }
  for (std::size_t w = 0; w < space.observed_size(); ++w) {
    if (is_support(pf(w))) {
      hw.push_back(w);
      lw.push_back(space.observed_labels()[w]);
    }
  }
  StateSpace sub(lz, lw);
  Matrix m(static_cast<Eigen::Index>(sub.size()), static_cast<Eigen::Index>(sub.size()));
  for (std::size_t i = 0; i < hz.size(); ++i) {
    for (std::size_t j = 0; j < hw.size(); ++j) {
      for (std::size_t k = 0; k < hz.size(); ++k) {
        for (std::size_t l = 0; l < hw.size(); ++l) {
          m(sub.index(i, j), sub.index(k, l)) = kernel.prob(hz[i], hw[j], hz[k], hw[l]);
        }
      }
    }
  }
  return validate_kernel(std::move(m), std::move(sub));
}

}  // namespace filter_ergodics
