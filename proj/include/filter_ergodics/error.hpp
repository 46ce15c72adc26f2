#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace filter_ergodics {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad dimensions, non-stochastic rows, parse failures.
/// The CLI maps this family to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NonStochasticRow : public ValidationError {
 public:
  NonStochasticRow(std::size_t row, double sum)
      : ValidationError("row " + std::to_string(row) + " sums to " + std::to_string(sum)),
        row_(row),
        sum_(sum) {}
  std::size_t row() const noexcept { return row_; }
  double sum() const noexcept { return sum_; }

 private:
  std::size_t row_;
  double sum_;
};

class NegativeEntry : public ValidationError {
 public:
  NegativeEntry(std::size_t row, std::size_t col, double value)
      : ValidationError("negative entry " + std::to_string(value) + " at (" + std::to_string(row) +
                        ", " + std::to_string(col) + ")"),
        row_(row),
        col_(col) {}
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EpsilonOutOfRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ConstraintViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NormalizationViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SupportViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(std::size_t iterations)
      : Error("power iteration did not converge after " + std::to_string(iterations) +
              " iterations"),
        iterations_(iterations) {}
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

/// The observation pair (y0, y1) has zero probability under the current filter.
class ImpossibleObservation : public Error {
 public:
  ImpossibleObservation(std::size_t y0, std::size_t y1)
      : Error("observation transition " + std::to_string(y0) + " -> " + std::to_string(y1) +
              " has zero probability under the filter"),
        y0_(y0),
        y1_(y1) {}
  std::size_t y0() const noexcept { return y0_; }
  std::size_t y1() const noexcept { return y1_; }

 private:
  std::size_t y0_;
  std::size_t y1_;
};

class UndefinedConditional : public Error {
 public:
  using Error::Error;
};

class ZeroLikelihood : public Error {
 public:
  explicit ZeroLikelihood(std::size_t hidden_state)
      : Error("observation window has zero likelihood from hidden state " +
              std::to_string(hidden_state)),
        hidden_state_(hidden_state) {}
  std::size_t hidden_state() const noexcept { return hidden_state_; }

 private:
  std::size_t hidden_state_;
};

/// Raised when an experiment requires nondegeneracy/ergodicity that could not be
/// verified and no override was given.
class AssumptionNotVerified : public Error {
 public:
  using Error::Error;
};

}  // namespace filter_ergodics
