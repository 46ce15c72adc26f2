#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mixing.hpp"
#include "nondegeneracy.hpp"
#include "stationary.hpp"

namespace filter_ergodics {

struct AssumptionOptions {
  std::size_t mixing_horizon = 50;
  std::size_t nstep_max = 3;
  /// A mixing coefficient below this at the last computed horizon counts as converged.
  double ergodic_tolerance = 1e-6;
};

/// Desk-scale evidence for marginal ergodicity (forward and reversed),
/// nondegeneracy and their structural consequences, at finite horizons.
struct AssumptionReport {
  AssumptionOptions options;
  std::size_t eigenspace_dimension = 1;
  NondegeneracyResult nondegeneracy;
  ProductStructureReport product;
  std::vector<NStepReport> nstep;
  MixingProfile mixing;
  /// Nondegeneracy of P' restricted to supp pi; empty when supp pi is not a product set.
  std::optional<NondegeneracyResult> reversed_nondegeneracy;

  bool nondegenerate() const noexcept { return nondegeneracy.nondegenerate(); }
  bool marginal_ergodic() const { return mixing.alpha_fwd.back() < options.ergodic_tolerance; }
  bool reversed_marginal_ergodic() const { return mixing.alpha_rev.back() < options.ergodic_tolerance; }
  bool absolutely_regular() const { return mixing.beta.back() < options.ergodic_tolerance; }
  bool reversed_nondegenerate() const {
    return reversed_nondegeneracy && reversed_nondegeneracy->nondegenerate();
  }
  bool main_assumptions_hold() const {
    return nondegenerate() && marginal_ergodic() && reversed_marginal_ergodic();
  }
};

inline AssumptionReport assess_assumptions(const JointKernel& kernel, const StationaryLaw& law,
                                           const AssumptionOptions& opt = {}) {
  AssumptionReport r;
  r.options = opt;
  r.eigenspace_dimension = law.eigenspace_dimension;
  r.nondegeneracy = detect_nondegeneracy(kernel);
  r.product = product_structure_check(kernel.space(), law.pi);
  for (std::size_t n = 1; n <= opt.nstep_max; ++n) {
    r.nstep.push_back(nstep_factorization_check(kernel, law.pi, n));
  }
  r.mixing = mixing_profile(kernel, law, opt.mixing_horizon);
  const JointKernel rev = reverse_kernel(kernel, law);
  if (auto restricted = support_restriction(rev, law.pi)) {
    r.reversed_nondegeneracy = detect_nondegeneracy(*restricted);
  }
  return r;
}

/// Precondition gate for the Monte-Carlo experiments: throws unless the
/// kernel is nondegenerate and marginally ergodic in both time directions.
inline void require_main_assumptions(const JointKernel& kernel, const StationaryLaw& law,
                                     std::size_t horizon = 50) {
  if (!detect_nondegeneracy(kernel).nondegenerate()) {
    throw AssumptionNotVerified("kernel is degenerate; pass the override flag to run anyway");
  }
  AssumptionOptions opt;
  opt.mixing_horizon = horizon;
  const MixingProfile m = mixing_profile(kernel, law, horizon);
  if (m.alpha_fwd.back() >= opt.ergodic_tolerance || m.alpha_rev.back() >= opt.ergodic_tolerance) {
    throw AssumptionNotVerified("marginal ergodicity not reached within " + std::to_string(horizon) +
                                " steps; pass the override flag to run anyway");
  }
}

}  // namespace filter_ergodics
