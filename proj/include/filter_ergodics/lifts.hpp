#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "filter.hpp"

namespace filter_ergodics {

enum class LiftKind { kPair, kTriple };

/// A weighted atom of a measure on P(E) x F (pair lift, Gamma) or
/// P(E) x E x F (triple lift, Lambda). `x` is set exactly for triple atoms.
struct LiftAtom {
  FilterState nu;
  std::optional<std::size_t> x;
  std::size_t y = 0;
  double weight = 0.0;
};

struct LiftProvenance {
  std::uint64_t seed = 0;
  std::size_t burn_in = 0;
  std::size_t samples = 0;
};

/// Finitely supported measure over lifted states. Atoms from estimate_invariant
/// keep their sampling order and equal weights; they are never merged.
struct EmpiricalLiftMeasure {
  LiftKind kind = LiftKind::kPair;
  std::vector<LiftAtom> atoms;
  std::optional<LiftProvenance> provenance;

  double total_weight() const {
    double t = 0.0;
    for (const auto& a : atoms) t += a.weight;
    return t;
  }
};

struct GammaSuccessor {
  double probability = 0.0;
  FilterState nu;
  std::size_t y = 0;
};

struct LambdaSuccessor {
  double probability = 0.0;
  FilterState nu;
  std::size_t x = 0;
  std::size_t y = 0;
};

/// One step of the pair kernel Gamma from (nu, y0): for each y1 with positive
/// predictive probability, that probability and (U(nu, y0, y1), y1).
inline std::vector<GammaSuccessor> gamma_successors(const JointKernel& kernel, const FilterState& nu,
                                                    std::size_t y0) {
  std::vector<GammaSuccessor> out;
  const StateSpace& s = kernel.space();
  for (std::size_t y1 = 0; y1 < s.observed_size(); ++y1) {
    double p = 0.0;
    for (std::size_t z = 0; z < s.hidden_size(); ++z) {
      if (nu.probs[z] == 0.0) continue;
      for (std::size_t z2 = 0; z2 < s.hidden_size(); ++z2) {
        p += nu.probs[z] * kernel(s.index(z, y0), s.index(z2, y1));
      }
    }
    if (p > 0.0) out.push_back({p, filter_update(kernel, nu, y0, y1), y1});
  }
  return out;
}

/// One step of the triple kernel Lambda from (nu, x, y).
inline std::vector<LambdaSuccessor> lambda_successors(const JointKernel& kernel, const FilterState& nu,
                                                      std::size_t x, std::size_t y) {
  std::vector<LambdaSuccessor> out;
  const StateSpace& s = kernel.space();
  const std::size_t a = s.index(x, y);
  std::vector<std::optional<FilterState>> updated(s.observed_size());
  for (std::size_t b = 0; b < s.size(); ++b) {
    const double p = kernel(a, b);
    if (!is_support(p)) continue;
    const std::size_t y1 = s.observed_of(b);
    if (!updated[y1]) updated[y1] = filter_update(kernel, nu, y, y1);
    out.push_back({p, *updated[y1], s.hidden_of(b), y1});
  }
  return out;
}

/// Pushforward of a finitely supported pair measure by one Gamma step.
inline EmpiricalLiftMeasure gamma_step(const JointKernel& kernel, const EmpiricalLiftMeasure& m) {
  EmpiricalLiftMeasure out{LiftKind::kPair, {}, std::nullopt};
  for (const auto& atom : m.atoms) {
    for (auto& succ : gamma_successors(kernel, atom.nu, atom.y)) {
      out.atoms.push_back({std::move(succ.nu), std::nullopt, succ.y, atom.weight * succ.probability});
    }
  }
  return out;
}

/// Pushforward of a finitely supported triple measure by one Lambda step.
inline EmpiricalLiftMeasure lambda_step(const JointKernel& kernel, const EmpiricalLiftMeasure& m) {
  EmpiricalLiftMeasure out{LiftKind::kTriple, {}, std::nullopt};
  for (const auto& atom : m.atoms) {
    for (auto& succ : lambda_successors(kernel, atom.nu, atom.x.value(), atom.y)) {
      out.atoms.push_back({std::move(succ.nu), succ.x, succ.y, atom.weight * succ.probability});
    }
  }
  return out;
}

/// bm(z, w) = sum over atoms of weight * nu(z) * 1{y = w}.
inline Vector barycenter(const StateSpace& s, const EmpiricalLiftMeasure& m) {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(s.size()));
  for (const auto& atom : m.atoms) {
    for (std::size_t z = 0; z < s.hidden_size(); ++z) out(s.index(z, atom.y)) += atom.weight * atom.nu.probs[z];
  }
  return out;
}

/// mM: the (x, y) marginal of a triple measure.
inline Vector hidden_observed_marginal(const StateSpace& s, const EmpiricalLiftMeasure& m) {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(s.size()));
  for (const auto& atom : m.atoms) out(s.index(atom.x.value(), atom.y)) += atom.weight;
  return out;
}

/// gamma M: the (nu, y) marginal of a triple measure.
inline EmpiricalLiftMeasure filter_observed_marginal(const EmpiricalLiftMeasure& m) {
  EmpiricalLiftMeasure out{LiftKind::kPair, {}, m.provenance};
  out.atoms.reserve(m.atoms.size());
  for (const auto& atom : m.atoms) out.atoms.push_back({atom.nu, std::nullopt, atom.y, atom.weight});
  return out;
}

/// Exact membership in the class where nu is the conditional law of x given
/// (nu, y): atoms are grouped by identical (nu, y) and, within each group,
/// the mass on x = b must equal sum weight * nu(b).
inline bool class_M_exact(const EmpiricalLiftMeasure& m, double tolerance = 1e-12) {
  using Key = std::pair<std::vector<double>, std::size_t>;
  std::map<Key, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (const auto& atom : m.atoms) {
    auto& [lhs, rhs] = groups[Key{atom.nu.probs, atom.y}];
    if (lhs.empty()) {
      lhs.assign(atom.nu.size(), 0.0);
      rhs.assign(atom.nu.size(), 0.0);
    }
    lhs[atom.x.value()] += atom.weight;
    for (std::size_t b = 0; b < atom.nu.size(); ++b) rhs[b] += atom.weight * atom.nu.probs[b];
  }
  for (const auto& [key, sides] : groups) {
    for (std::size_t b = 0; b < sides.first.size(); ++b) {
      if (std::abs(sides.first[b] - sides.second[b]) > tolerance) return false;
    }
  }
  return true;
}

}  // namespace filter_ergodics
