#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "error.hpp"

namespace filter_ergodics {

inline constexpr std::size_t kDefaultMaxStates = 4096;

/// Finite hidden space E and observed space F. Joint states are indexed
/// z * |F| + w, which is also the row/column order of model files.
class StateSpace {
 public:
  StateSpace(std::vector<std::string> hidden, std::vector<std::string> observed,
             std::size_t max_states = kDefaultMaxStates)
      : hidden_(std::move(hidden)), observed_(std::move(observed)) {
    check_labels(hidden_, "hidden");
    check_labels(observed_, "observed");
    if (hidden_.size() * observed_.size() > max_states) {
      throw ValidationError("state space has " + std::to_string(hidden_.size() * observed_.size()) +
                            " joint states, limit is " + std::to_string(max_states));
    }
  }

  /// Space with labels "0", "1", ... for quick construction in tests and generators.
  static StateSpace numbered(std::size_t hidden, std::size_t observed) {
    return StateSpace(numbers(hidden), numbers(observed));
  }

  std::size_t hidden_size() const noexcept { return hidden_.size(); }
  std::size_t observed_size() const noexcept { return observed_.size(); }
  std::size_t size() const noexcept { return hidden_.size() * observed_.size(); }

  std::size_t index(std::size_t z, std::size_t w) const noexcept { return z * observed_.size() + w; }
  std::size_t hidden_of(std::size_t a) const noexcept { return a / observed_.size(); }
  std::size_t observed_of(std::size_t a) const noexcept { return a % observed_.size(); }

  const std::vector<std::string>& hidden_labels() const noexcept { return hidden_; }
  const std::vector<std::string>& observed_labels() const noexcept { return observed_; }

  std::optional<std::size_t> find_hidden(const std::string& label) const { return find(hidden_, label); }
  std::optional<std::size_t> find_observed(const std::string& label) const {
    return find(observed_, label);
  }

  std::string joint_label(std::size_t a) const {
    return "(" + hidden_[hidden_of(a)] + "," + observed_[observed_of(a)] + ")";
  }

  friend bool operator==(const StateSpace&, const StateSpace&) = default;

 private:
  static void check_labels(const std::vector<std::string>& labels, const char* which) {
    if (labels.empty()) throw ValidationError(std::string(which) + " label list is empty");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) {
        throw ValidationError(std::string("duplicate ") + which + " label '" + l + "'");
      }
    }
  }

  static std::vector<std::string> numbers(std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
  }

  static std::optional<std::size_t> find(const std::vector<std::string>& labels,
                                         const std::string& label) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) return i;
    }
    return std::nullopt;
  }

  std::vector<std::string> hidden_;
  std::vector<std::string> observed_;
};

}  // namespace filter_ergodics
