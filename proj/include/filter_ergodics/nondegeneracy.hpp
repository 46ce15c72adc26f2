#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kernel.hpp"

namespace filter_ergodics {

/// P((z,w),(z',w')) = g(z,w,z',w') P0(z,z') Q(w,w') with g > 0 wherever
/// P0 Q > 0. g is stored as an N x N matrix over joint indices, so
/// g(a, b) with a = (z,w) and b = (z',w').
struct NondegenFactorization {
  Matrix p0;
  Matrix q;
  Matrix g;
};

enum class NondegeneracyFailure {
  kNotRectangular,
  kHiddenSupportDependsOnObservation,
  kObservedSupportDependsOnHidden,
};

/// Why no factorization exists. For kNotRectangular, (z, w) is the row and
/// (z2, w2) a point of A(z,w) x B(z,w) outside the row support. For the two
/// dependence failures, (z2, w2) is the second row compared with (z, w).
struct NondegeneracyWitness {
  NondegeneracyFailure failure;
  std::size_t z = 0;
  std::size_t w = 0;
  std::size_t z2 = 0;
  std::size_t w2 = 0;

  std::string describe(const StateSpace& s) const {
    const auto& e = s.hidden_labels();
    const auto& f = s.observed_labels();
    switch (failure) {
      case NondegeneracyFailure::kNotRectangular:
        return "support of row (" + e[z] + "," + f[w] + ") is not a rectangle: (" + e[z2] + "," +
               f[w2] + ") lies in the product of its projections but has zero probability";
      case NondegeneracyFailure::kHiddenSupportDependsOnObservation:
        return "hidden support of row (" + e[z] + "," + f[w] + ") differs from row (" + e[z2] +
               "," + f[w2] + ")";
      case NondegeneracyFailure::kObservedSupportDependsOnHidden:
        return "observed support of row (" + e[z] + "," + f[w] + ") differs from row (" + e[z2] +
               "," + f[w2] + ")";
    }
    return {};
  }
};

struct NondegeneracyResult {
  std::optional<NondegenFactorization> factorization;
  std::optional<NondegeneracyWitness> witness;

  bool nondegenerate() const noexcept { return factorization.has_value(); }
};

namespace detail {

struct RowSupport {
  std::vector<bool> hidden;    // A(z,w)
  std::vector<bool> observed;  // B(z,w)
};

inline RowSupport row_projections(const JointKernel& k, std::size_t a) {
  const StateSpace& s = k.space();
  RowSupport r{std::vector<bool>(s.hidden_size(), false), std::vector<bool>(s.observed_size(), false)};
  for (std::size_t b = 0; b < s.size(); ++b) {
    if (is_support(k(a, b))) {
      r.hidden[s.hidden_of(b)] = true;
      r.observed[s.observed_of(b)] = true;
    }
  }
  return r;
}

}  // namespace detail

/// Decides nondegeneracy (P = g P0 x Q, g > 0) on a finite space. Every row
/// support must be a rectangle A(z,w) x B(z,w) with A depending on z only and
/// B on w only; then the canonical factorization uses uniform P0/Q on those
/// sets. Otherwise a witness names the first failing row.
inline NondegeneracyResult detect_nondegeneracy(const JointKernel& kernel) {
  const StateSpace& s = kernel.space();
  const std::size_t ne = s.hidden_size();
  const std::size_t nf = s.observed_size();

  std::vector<detail::RowSupport> proj;
  proj.reserve(s.size());
  for (std::size_t a = 0; a < s.size(); ++a) {
    proj.push_back(detail::row_projections(kernel, a));
    const auto& p = proj.back();
    for (std::size_t z2 = 0; z2 < ne; ++z2) {
      if (!p.hidden[z2]) continue;
      for (std::size_t w2 = 0; w2 < nf; ++w2) {
        if (p.observed[w2] && !is_support(kernel(a, s.index(z2, w2)))) {
          return {std::nullopt, NondegeneracyWitness{NondegeneracyFailure::kNotRectangular,
                                                     s.hidden_of(a), s.observed_of(a), z2, w2}};
        }
      }
    }
  }
  for (std::size_t z = 0; z < ne; ++z) {
    for (std::size_t w = 1; w < nf; ++w) {
      if (proj[s.index(z, w)].hidden != proj[s.index(z, 0)].hidden) {
        return {std::nullopt, NondegeneracyWitness{
                                  NondegeneracyFailure::kHiddenSupportDependsOnObservation, z, 0, z, w}};
      }
    }
  }
  for (std::size_t w = 0; w < nf; ++w) {
    for (std::size_t z = 1; z < ne; ++z) {
      if (proj[s.index(z, w)].observed != proj[s.index(0, w)].observed) {
        return {std::nullopt, NondegeneracyWitness{
                                  NondegeneracyFailure::kObservedSupportDependsOnHidden, 0, w, z, w}};
      }
    }
  }

  NondegenFactorization f;
  f.p0 = Matrix::Zero(static_cast<Eigen::Index>(ne), static_cast<Eigen::Index>(ne));
  f.q = Matrix::Zero(static_cast<Eigen::Index>(nf), static_cast<Eigen::Index>(nf));
  for (std::size_t z = 0; z < ne; ++z) {
    const auto& a = proj[s.index(z, 0)].hidden;
    const double cnt = static_cast<double>(std::count(a.begin(), a.end(), true));
    for (std::size_t z2 = 0; z2 < ne; ++z2) f.p0(z, z2) = a[z2] ? 1.0 / cnt : 0.0;
  }
  for (std::size_t w = 0; w < nf; ++w) {
    const auto& b = proj[s.index(0, w)].observed;
    const double cnt = static_cast<double>(std::count(b.begin(), b.end(), true));
    for (std::size_t w2 = 0; w2 < nf; ++w2) f.q(w, w2) = b[w2] ? 1.0 / cnt : 0.0;
  }
  const auto n = static_cast<Eigen::Index>(s.size());
  f.g = Matrix::Ones(n, n);
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      const double base = f.p0(s.hidden_of(a), s.hidden_of(b)) * f.q(s.observed_of(a), s.observed_of(b));
      if (base > 0.0) f.g(a, b) = kernel(a, b) / base;
    }
  }
  return {std::move(f), std::nullopt};
}

struct FactorizationReport {
  bool valid = false;
  double max_reconstruction_error = 0.0;
  /// Smallest g over the support of P0 x Q.
  double min_g_on_support = 0.0;
  /// First joint index pair (a, b) that violates positivity or reconstruction.
  std::optional<std::pair<std::size_t, std::size_t>> failing_index;
  std::string message;
};

inline FactorizationReport validate_factorization(const JointKernel& kernel,
                                                  const NondegenFactorization& f,
                                                  double tolerance = 1e-12) {
  const StateSpace& s = kernel.space();
  const auto ne = static_cast<Eigen::Index>(s.hidden_size());
  const auto nf = static_cast<Eigen::Index>(s.observed_size());
  const auto n = static_cast<Eigen::Index>(s.size());
  FactorizationReport r;
  if (f.p0.rows() != ne || f.p0.cols() != ne || f.q.rows() != nf || f.q.cols() != nf ||
      f.g.rows() != n || f.g.cols() != n) {
    r.message = "shape mismatch";
    return r;
  }
  auto stochastic = [](const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if ((m.row(i).array() < 0.0).any() || std::abs(m.row(i).sum() - 1.0) > kRowSumTolerance) return false;
    }
    return true;
  };
  if (!stochastic(f.p0) || !stochastic(f.q)) {
    r.message = "P0 or Q is not row-stochastic";
    return r;
  }
  r.valid = true;
  r.min_g_on_support = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      const double base = f.p0(s.hidden_of(a), s.hidden_of(b)) * f.q(s.observed_of(a), s.observed_of(b));
      const double g = f.g(a, b);
      const double err = std::abs(g * base - kernel(a, b));
      r.max_reconstruction_error = std::max(r.max_reconstruction_error, err);
      bool bad = err > tolerance || g < 0.0;
      if (base > 0.0) {
        r.min_g_on_support = std::min(r.min_g_on_support, g);
        if (!(g > 0.0)) bad = true;
      }
      if (bad && r.valid) {
        r.valid = false;
        r.failing_index = std::make_pair(a, b);
        r.message = "factorization fails at (" + s.joint_label(a) + " -> " + s.joint_label(b) + ")";
      }
    }
  }
  return r;
}

struct NStepReport {
  bool holds = true;
  std::size_t n = 0;
  /// First joint state in supp pi whose n-step support is not the product of
  /// the supports of P_n^X(z, .) and P_n^Y(w, .).
  std::optional<std::size_t> failing_state;
};

/// Checks that supp P^n((z,w), .) = supp P_n^X(z, .) x supp P_n^Y(w, .) on supp pi,
/// where P_n^X(z, .) = sum_w pi(w | z) margE P^n((z,w), .) and symmetrically for Y.
inline NStepReport nstep_factorization_check(const JointKernel& kernel, const Vector& pi, std::size_t n) {
  const StateSpace& s = kernel.space();
  const std::size_t ne = s.hidden_size();
  const std::size_t nf = s.observed_size();
  const Matrix pn = kernel_power(kernel, n);
  const Vector pe = hidden_marginal(s, pi);
  const Vector pf = observed_marginal(s, pi);

  Matrix px = Matrix::Zero(static_cast<Eigen::Index>(ne), static_cast<Eigen::Index>(ne));
  Matrix py = Matrix::Zero(static_cast<Eigen::Index>(nf), static_cast<Eigen::Index>(nf));
  for (std::size_t a = 0; a < s.size(); ++a) {
    const std::size_t z = s.hidden_of(a), w = s.observed_of(a);
    if (!is_support(pi(a))) continue;
    const double wx = pi(a) / pe(z);
    const double wy = pi(a) / pf(w);
    for (std::size_t b = 0; b < s.size(); ++b) {
      px(z, s.hidden_of(b)) += wx * pn(a, b);
      py(w, s.observed_of(b)) += wy * pn(a, b);
    }
  }

  NStepReport r;
  r.n = n;
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (!is_support(pi(a))) continue;
    const std::size_t z = s.hidden_of(a), w = s.observed_of(a);
    for (std::size_t b = 0; b < s.size(); ++b) {
      const bool lhs = is_support(pn(a, b));
      const bool rhs = is_support(px(z, s.hidden_of(b))) && is_support(py(w, s.observed_of(b)));
      if (lhs != rhs) {
        r.holds = false;
        r.failing_state = a;
        return r;
      }
    }
  }
  return r;
}

}  // namespace filter_ergodics
