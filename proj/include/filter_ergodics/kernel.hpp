#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <vector>

#include "error.hpp"
#include "state_space.hpp"

namespace filter_ergodics {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Kernel entries at or below this value are structural zeros for support computations.
inline constexpr double kZeroThreshold = 1e-14;
/// Rows may deviate from 1 by this much on input; they are renormalized afterwards.
inline constexpr double kRowSumTolerance = 1e-9;

inline bool is_support(double p) noexcept { return p > kZeroThreshold; }

/// Row-stochastic transition law of the pair chain (X_n, Y_n).
/// Only obtainable through validate_kernel, so every instance is stochastic.
class JointKernel {
 public:
  const StateSpace& space() const noexcept { return space_; }
  const Matrix& matrix() const noexcept { return rows_; }
  std::size_t size() const noexcept { return space_.size(); }

  double operator()(std::size_t from, std::size_t to) const { return rows_(from, to); }
  double prob(std::size_t z, std::size_t w, std::size_t z2, std::size_t w2) const {
    return rows_(space_.index(z, w), space_.index(z2, w2));
  }

  friend JointKernel validate_kernel(Matrix raw, StateSpace space);

 private:
  JointKernel(StateSpace space, Matrix rows) : space_(std::move(space)), rows_(std::move(rows)) {}

  StateSpace space_;
  Matrix rows_;
};

/// Checks shape, sign and row sums (within 1e-9), then renormalizes every row
/// so the sums hold to machine precision.
inline JointKernel validate_kernel(Matrix raw, StateSpace space) {
  const auto n = static_cast<Eigen::Index>(space.size());
  if (raw.rows() != n || raw.cols() != n) {
    throw ValidationError("kernel is " + std::to_string(raw.rows()) + "x" +
                          std::to_string(raw.cols()) + ", expected " + std::to_string(n) + "x" +
                          std::to_string(n));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = raw(i, j);
      if (!std::isfinite(v)) throw ValidationError("non-finite kernel entry");
      if (v < 0.0) {
        throw NegativeEntry(static_cast<std::size_t>(i), static_cast<std::size_t>(j), v);
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) throw NonStochasticRow(static_cast<std::size_t>(i), sum);
    raw.row(i) /= sum;
  }
  return JointKernel(std::move(space), std::move(raw));
}

/// Convenience overload taking nested rows, as read from JSON.
inline JointKernel validate_kernel(const std::vector<std::vector<double>>& rows, StateSpace space) {
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != m.cols()) {
      throw ValidationError("kernel row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " entries");
    }
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return validate_kernel(std::move(m), std::move(space));
}

inline Matrix kernel_power(const JointKernel& kernel, std::size_t n) {
  Matrix out = Matrix::Identity(static_cast<Eigen::Index>(kernel.size()),
                                static_cast<Eigen::Index>(kernel.size()));
  for (std::size_t i = 0; i < n; ++i) out = out * kernel.matrix();
  return out;
}

/// E-marginal of a law on E x F.
inline Vector hidden_marginal(const StateSpace& space, const Vector& joint) {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(space.hidden_size()));
  for (std::size_t a = 0; a < space.size(); ++a) out(space.hidden_of(a)) += joint(a);
  return out;
}

/// F-marginal of a law on E x F.
inline Vector observed_marginal(const StateSpace& space, const Vector& joint) {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(space.observed_size()));
  for (std::size_t a = 0; a < space.size(); ++a) out(space.observed_of(a)) += joint(a);
  return out;
}

/// Total-mass total variation: sum of absolute differences, in [0, 2].
inline double tv_norm(const Vector& a, const Vector& b) { return (a - b).cwiseAbs().sum(); }

}  // namespace filter_ergodics
