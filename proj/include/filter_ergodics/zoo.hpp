#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nondegeneracy.hpp"
#include "rng.hpp"
#include "stationary.hpp"

namespace filter_ergodics {

enum class ModelFamily { kHmm, kGeneralizedHmm, kCorrelatedNoiseHmm, kGeneral, kCounterexample, kKalmanDemo };

inline std::string family_name(ModelFamily f) {
  switch (f) {
    case ModelFamily::kHmm: return "hmm";
    case ModelFamily::kGeneralizedHmm: return "generalized_hmm";
    case ModelFamily::kCorrelatedNoiseHmm: return "correlated_noise_hmm";
    case ModelFamily::kGeneral: return "general";
    case ModelFamily::kCounterexample: return "counterexample";
    case ModelFamily::kKalmanDemo: return "kalman_demo";
  }
  return "general";
}

inline std::optional<ModelFamily> parse_family(const std::string& s) {
  for (auto f : {ModelFamily::kHmm, ModelFamily::kGeneralizedHmm, ModelFamily::kCorrelatedNoiseHmm,
                 ModelFamily::kGeneral, ModelFamily::kCounterexample, ModelFamily::kKalmanDemo}) {
    if (family_name(f) == s) return f;
  }
  return std::nullopt;
}

struct ModelSpec {
  std::string name;
  ModelFamily family = ModelFamily::kGeneral;
  std::vector<std::pair<std::string, double>> parameters;
  std::string description;
  JointKernel kernel;
  std::optional<NondegenFactorization> factorization;
  StationaryLaw law;
  /// Autonomous hidden kernel when the family has one: P0 for generalized
  /// HMMs, tilde P0 for HMMs with correlated noise.
  std::optional<Matrix> hidden_kernel;
};

namespace detail {

inline ModelSpec finish_model(std::string name, ModelFamily family,
                              std::vector<std::pair<std::string, double>> params, std::string description,
                              JointKernel kernel, std::optional<NondegenFactorization> f = std::nullopt,
                              std::optional<Matrix> hidden = std::nullopt) {
  StationaryLaw law = stationary_law(kernel);
  return ModelSpec{std::move(name), family,         std::move(params), std::move(description),
                   std::move(kernel), std::move(f), std::move(law),    std::move(hidden)};
}

inline StateSpace two_bit_space(std::vector<std::string> observed) {
  return StateSpace({"00", "01", "10", "11"}, std::move(observed));
}

/// Hidden kernel of the shifted coin pair: (a, b) -> (b, c), c fair.
inline Matrix shift_pair_kernel() {
  Matrix p0 = Matrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) p0(2 * a + b, 2 * b + c) = 0.5;
    }
  }
  return p0;
}

/// Dirichlet(1, ..., 1) row with each entry independently forced to zero with
/// probability `sparsity` (at least one entry stays positive).
inline std::vector<double> random_row(Rng& rng, std::size_t n, double sparsity) {
  std::vector<double> row(n);
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    const bool keep = !(sparsity > 0.0 && rng.uniform() < sparsity);
    row[i] = keep ? -std::log(rng.open_uniform()) : 0.0;
    any = any || keep;
  }
  if (!any) row[static_cast<std::size_t>(rng.next() % n)] = -std::log(rng.open_uniform());
  double s = 0.0;
  for (double v : row) s += v;
  for (double& v : row) v /= s;
  return row;
}

}  // namespace detail

/// X_n = (xi_n, xi_{n+1}), Y_n = |xi_{n+1} - xi_n| with xi i.i.d. fair coins.
inline ModelSpec build_example_1_1() {
  StateSpace space = detail::two_bit_space({"0", "1"});
  Matrix p = Matrix::Zero(8, 8);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int y = 0; y < 2; ++y) {
        for (int c = 0; c < 2; ++c) p(space.index(2 * a + b, y), space.index(2 * b + c, std::abs(c - b))) = 0.5;
      }
    }
  }
  return detail::finish_model("example_1_1", ModelFamily::kCounterexample, {},
                              "hidden coin pairs observed through their parity without noise",
                              validate_kernel(std::move(p), std::move(space)));
}

/// The parity model above with the observation passed through a binary symmetric channel
/// with flip probability epsilon.
inline ModelSpec build_example_1_1_noisy(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw EpsilonOutOfRange("epsilon must lie in (0, 1/2), got " + std::to_string(epsilon));
  }
  StateSpace space = detail::two_bit_space({"0", "1"});
  NondegenFactorization f{detail::shift_pair_kernel(), Matrix::Constant(2, 2, 0.5), Matrix::Ones(8, 8)};
  Matrix p = Matrix::Zero(8, 8);
  for (std::size_t a = 0; a < 8; ++a) {
    const std::size_t z = space.hidden_of(a);
    for (std::size_t z2 = 0; z2 < 4; ++z2) {
      if (f.p0(z, z2) == 0.0) continue;
      const int h = static_cast<int>((z2 >> 1) ^ (z2 & 1));
      for (int y2 = 0; y2 < 2; ++y2) {
        const double channel = (y2 == h) ? 1.0 - epsilon : epsilon;
        const std::size_t b = space.index(z2, static_cast<std::size_t>(y2));
        f.g(a, b) = 2.0 * channel;
        p(a, b) = f.p0(z, z2) * 0.5 * f.g(a, b);
      }
    }
  }
  return detail::finish_model("example_1_1_noisy", ModelFamily::kHmm, {{"epsilon", epsilon}},
                              "parity observations flipped independently with probability epsilon",
                              validate_kernel(std::move(p), std::move(space)), std::move(f),
                              detail::shift_pair_kernel());
}

/// Sign discretization of the correlated-noise counterexample: Y_n i.i.d.
/// uniform on {-, +} and (X^1_n, X^2_n) = (X^2_{n-1}, |X^2_{n-1} - 1{Y_{n-1} = +}|).
/// The hidden dynamics see Y only through its sign, so nothing is lost.
inline ModelSpec build_example_1_2_discrete() {
  StateSpace space = detail::two_bit_space({"-", "+"});
  Matrix p = Matrix::Zero(8, 8);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int y = 0; y < 2; ++y) {
        const int next = 2 * b + std::abs(b - y);
        for (int y2 = 0; y2 < 2; ++y2) p(space.index(2 * a + b, y), space.index(next, y2)) = 0.5;
      }
    }
  }
  return detail::finish_model("example_1_2_discrete", ModelFamily::kCounterexample, {},
                              "hidden coin pairs driven by the sign of i.i.d. observations",
                              validate_kernel(std::move(p), std::move(space)));
}

/// Law of the embedded chain (X_n, 1{Y_{n-1} = +}) of a model whose
/// observations are i.i.d. (identical F-marginal in every row), on E x {0, 1}.
inline JointKernel sign_embedded_chain(const JointKernel& kernel) {
  const StateSpace& s = kernel.space();
  if (s.observed_size() != 2) throw ValidationError("embedded sign chain needs |F| = 2");
  std::vector<double> q(2, 0.0);
  for (std::size_t b = 0; b < s.size(); ++b) q[s.observed_of(b)] += kernel(0, b);
  for (std::size_t a = 0; a < s.size(); ++a) {
    std::vector<double> qa(2, 0.0);
    for (std::size_t b = 0; b < s.size(); ++b) qa[s.observed_of(b)] += kernel(a, b);
    if (qa != q) throw ValidationError("observations are not i.i.d. across rows");
  }
  StateSpace out_space(s.hidden_labels(), {"0", "1"});
  Matrix k = Matrix::Zero(static_cast<Eigen::Index>(out_space.size()), static_cast<Eigen::Index>(out_space.size()));
  for (std::size_t x = 0; x < s.hidden_size(); ++x) {
    for (std::size_t sign = 0; sign < 2; ++sign) {
      for (std::size_t y = 0; y < 2; ++y) {
        for (std::size_t x2 = 0; x2 < s.hidden_size(); ++x2) {
          double hidden = 0.0;
          for (std::size_t y2 = 0; y2 < 2; ++y2) hidden += kernel.prob(x, y, x2, y2);
          k(out_space.index(x, sign), out_space.index(x2, y)) += q[y] * hidden;
        }
      }
    }
  }
  return validate_kernel(std::move(k), std::move(out_space));
}

/// P((z,w),(z',w')) = P0(z,z') obs_density((z,w),(z',w')) phi(w'), where
/// obs_density is an N x N matrix over joint indices and must integrate to one
/// against phi for every (z, w, z').
inline ModelSpec build_generalized_hmm(const StateSpace& space, const Matrix& p0, const Matrix& obs_density,
                                       const Vector& phi, std::string name = "generalized_hmm") {
  const auto ne = static_cast<Eigen::Index>(space.hidden_size());
  const auto nf = static_cast<Eigen::Index>(space.observed_size());
  const auto n = static_cast<Eigen::Index>(space.size());
  if (p0.rows() != ne || p0.cols() != ne || obs_density.rows() != n || obs_density.cols() != n ||
      phi.size() != nf) {
    throw ValidationError("generalized HMM parameter shapes do not match the state space");
  }
  if ((phi.array() <= 0.0).any() || std::abs(phi.sum() - 1.0) > 1e-10) {
    throw ConstraintViolation("phi must be a strictly positive probability vector");
  }
  for (Eigen::Index z = 0; z < ne; ++z) {
    if ((p0.row(z).array() < 0.0).any() || std::abs(p0.row(z).sum() - 1.0) > kRowSumTolerance) {
      throw ValidationError("P0 row " + std::to_string(z) + " is not stochastic");
    }
  }
  for (std::size_t a = 0; a < space.size(); ++a) {
    for (std::size_t z2 = 0; z2 < space.hidden_size(); ++z2) {
      double total = 0.0;
      for (std::size_t w2 = 0; w2 < space.observed_size(); ++w2) {
        const double d = obs_density(a, space.index(z2, w2));
        if (!(d > 0.0)) throw ConstraintViolation("observation density must be strictly positive");
        total += d * phi(w2);
      }
      if (std::abs(total - 1.0) > 1e-10) {
        throw ConstraintViolation("observation density integrates to " + std::to_string(total) +
                                  " against phi at " + space.joint_label(a));
      }
    }
  }
  NondegenFactorization f{p0, Matrix(nf, nf), obs_density};
  for (Eigen::Index w = 0; w < nf; ++w) f.q.row(w) = phi.transpose();
  Matrix p(n, n);
  for (std::size_t a = 0; a < space.size(); ++a) {
    for (std::size_t b = 0; b < space.size(); ++b) {
      p(a, b) = p0(space.hidden_of(a), space.hidden_of(b)) * obs_density(a, b) * phi(space.observed_of(b));
    }
  }
  return detail::finish_model(std::move(name), ModelFamily::kGeneralizedHmm, {},
                              "hidden chain with autonomous dynamics P0 and observation-driven emissions",
                              validate_kernel(std::move(p), space), std::move(f), p0);
}

/// P((z,w),(z',w')) = gX((z,w), z') gY(z', w') phi(w'), with gX an N x |E|
/// matrix of strictly positive transition rows and gY an |E| x |F| density
/// normalized against phi. The hidden kernel slot holds tilde P0.
inline ModelSpec build_correlated_noise_hmm(const StateSpace& space, const Matrix& gx, const Matrix& gy,
                                            const Vector& phi, std::string name = "correlated_noise_hmm") {
  const auto ne = static_cast<Eigen::Index>(space.hidden_size());
  const auto nf = static_cast<Eigen::Index>(space.observed_size());
  const auto n = static_cast<Eigen::Index>(space.size());
  if (gx.rows() != n || gx.cols() != ne || gy.rows() != ne || gy.cols() != nf || phi.size() != nf) {
    throw ValidationError("correlated-noise HMM parameter shapes do not match the state space");
  }
  if ((phi.array() <= 0.0).any() || std::abs(phi.sum() - 1.0) > 1e-10) {
    throw NormalizationViolation("phi must be a strictly positive probability vector");
  }
  for (Eigen::Index a = 0; a < n; ++a) {
    if ((gx.row(a).array() <= 0.0).any() || std::abs(gx.row(a).sum() - 1.0) > kRowSumTolerance) {
      throw ValidationError("gX row " + std::to_string(a) + " is not a strictly positive probability");
    }
  }
  for (Eigen::Index z = 0; z < ne; ++z) {
    const double total = gy.row(z).dot(phi.transpose());
    if ((gy.row(z).array() <= 0.0).any() || std::abs(total - 1.0) > 1e-10) {
      throw NormalizationViolation("gY row " + std::to_string(z) + " integrates to " + std::to_string(total));
    }
  }
  Matrix p(n, n);
  NondegenFactorization f{Matrix::Constant(ne, ne, 1.0 / static_cast<double>(ne)), Matrix(nf, nf), Matrix(n, n)};
  for (Eigen::Index w = 0; w < nf; ++w) f.q.row(w) = phi.transpose();
  for (std::size_t a = 0; a < space.size(); ++a) {
    for (std::size_t b = 0; b < space.size(); ++b) {
      const std::size_t z2 = space.hidden_of(b), w2 = space.observed_of(b);
      p(a, b) = gx(a, z2) * gy(z2, w2) * phi(w2);
      f.g(a, b) = static_cast<double>(ne) * gx(a, z2) * gy(z2, w2);
    }
  }
  Matrix tilde = Matrix::Zero(ne, ne);
  for (std::size_t z = 0; z < space.hidden_size(); ++z) {
    for (std::size_t w = 0; w < space.observed_size(); ++w) {
      const double weight = gy(z, w) * phi(w);
      for (std::size_t z2 = 0; z2 < space.hidden_size(); ++z2) tilde(z, z2) += weight * gx(space.index(z, w), z2);
    }
  }
  return detail::finish_model(std::move(name), ModelFamily::kCorrelatedNoiseHmm, {},
                              "hidden dynamics fed back by the previous observation",
                              validate_kernel(std::move(p), space), std::move(f), std::move(tilde));
}

struct RandomModelOptions {
  std::size_t hidden = 3;
  std::size_t observed = 2;
  bool nondegenerate = true;
  std::uint64_t seed = 1;
  /// Probability of forcing each P0/Q entry (nondegenerate) or each joint
  /// entry (unconstrained) to zero.
  double sparsity = 0.0;
};

/// Seeded random kernel. Nondegenerate models are g P0 Q with g log-uniform on
/// [1/e, e], each row renormalized (the normalization is folded into g).
inline ModelSpec random_model(const RandomModelOptions& opt) {
  StateSpace space = StateSpace::numbered(opt.hidden, opt.observed);
  Rng rng(opt.seed);
  const std::size_t ne = opt.hidden, nf = opt.observed, n = space.size();
  std::vector<std::pair<std::string, double>> params{{"hidden", static_cast<double>(ne)},
                                                     {"observed", static_cast<double>(nf)},
                                                     {"nondegenerate", opt.nondegenerate ? 1.0 : 0.0},
                                                     {"seed", static_cast<double>(opt.seed)},
                                                     {"sparsity", opt.sparsity}};
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  if (!opt.nondegenerate) {
    for (std::size_t a = 0; a < n; ++a) {
      const auto row = detail::random_row(rng, n, opt.sparsity);
      for (std::size_t b = 0; b < n; ++b) p(a, b) = row[b];
    }
    return detail::finish_model("random", ModelFamily::kGeneral, std::move(params),
                                "seeded random kernel without structural constraints",
                                validate_kernel(std::move(p), std::move(space)));
  }
  NondegenFactorization f{Matrix(ne, ne), Matrix(nf, nf), Matrix::Ones(n, n)};
  for (std::size_t z = 0; z < ne; ++z) {
    const auto row = detail::random_row(rng, ne, opt.sparsity);
    for (std::size_t j = 0; j < ne; ++j) f.p0(z, j) = row[j];
  }
  for (std::size_t w = 0; w < nf; ++w) {
    const auto row = detail::random_row(rng, nf, opt.sparsity);
    for (std::size_t j = 0; j < nf; ++j) f.q(w, j) = row[j];
  }
  for (std::size_t a = 0; a < n; ++a) {
    double total = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      f.g(a, b) = std::exp(2.0 * rng.uniform() - 1.0);
      p(a, b) = f.g(a, b) * f.p0(space.hidden_of(a), space.hidden_of(b)) * f.q(space.observed_of(a), space.observed_of(b));
      total += p(a, b);
    }
    p.row(a) /= total;
    f.g.row(a) /= total;
  }
  return detail::finish_model("random", ModelFamily::kGeneral, std::move(params),
                              "seeded random kernel of the form g P0 Q with positive g",
                              validate_kernel(std::move(p), std::move(space)), std::move(f));
}

/// Fixed 3 x 2 generalized HMM used by the CLI catalog.
inline ModelSpec build_generalized_hmm_demo() {
  StateSpace space({"a", "b", "c"}, {"lo", "hi"});
  Matrix p0(3, 3);
  p0 << 0.6, 0.3, 0.1, 0.2, 0.5, 0.3, 0.25, 0.25, 0.5;
  Vector phi(2);
  phi << 0.5, 0.5;
  Matrix dens(6, 6);
  for (std::size_t a = 0; a < 6; ++a) {
    const double w = static_cast<double>(space.observed_of(a));
    for (std::size_t z2 = 0; z2 < 3; ++z2) {
      const double hi = 0.2 + 0.2 * static_cast<double>(z2) + 0.3 * w;
      dens(a, space.index(z2, 0)) = 2.0 * (1.0 - hi);
      dens(a, space.index(z2, 1)) = 2.0 * hi;
    }
  }
  return build_generalized_hmm(space, p0, dens, phi, "generalized_hmm_demo");
}

/// Fixed 3 x 2 HMM with correlated noise used by the CLI catalog.
inline ModelSpec build_correlated_noise_hmm_demo() {
  StateSpace space({"a", "b", "c"}, {"lo", "hi"});
  Matrix gx(6, 3);
  gx << 0.7, 0.2, 0.1,
        0.3, 0.4, 0.3,
        0.1, 0.8, 0.1,
        0.2, 0.2, 0.6,
        0.5, 0.25, 0.25,
        0.15, 0.15, 0.7;
  Matrix gy(3, 2);
  gy << 1.6, 0.4, 1.0, 1.0, 0.2, 1.8;
  Vector phi(2);
  phi << 0.5, 0.5;
  return build_correlated_noise_hmm(space, gx, gy, phi, "correlated_noise_hmm_demo");
}

struct ZooEntry {
  std::string name;
  std::string description;
  std::vector<std::pair<std::string, std::string>> defaults;
};

inline std::vector<ZooEntry> zoo_catalog() {
  return {
      {"example_1_1", "noiseless parity observations of shifted coin pairs (filter unstable)", {}},
      {"example_1_1_noisy", "parity observations through a binary symmetric channel", {{"epsilon", "0.1"}}},
      {"example_1_2_discrete", "sign-driven hidden dynamics with i.i.d. observations", {}},
      {"generalized_hmm_demo", "3x2 generalized hidden Markov model", {}},
      {"correlated_noise_hmm_demo", "3x2 hidden Markov model with correlated noise", {}},
      {"random",
       "seeded random model",
       {{"hidden", "3"}, {"observed", "2"}, {"nondegenerate", "1"}, {"seed", "1"}, {"sparsity", "0"}}},
  };
}

/// Builds a catalog model; `params` override the entry defaults.
inline ModelSpec build_zoo_model(const std::string& name, const std::map<std::string, std::string>& params = {}) {
  const auto catalog = zoo_catalog();
  const ZooEntry* entry = nullptr;
  for (const auto& e : catalog) {
    if (e.name == name) entry = &e;
  }
  if (!entry) throw ValidationError("unknown zoo model '" + name + "'");
  std::map<std::string, std::string> values(entry->defaults.begin(), entry->defaults.end());
  for (const auto& [k, v] : params) {
    if (!values.count(k)) throw ValidationError("model '" + name + "' has no parameter '" + k + "'");
    values[k] = v;
  }
  auto number = [&](const std::string& k) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(values.at(k), &pos);
      if (pos != values.at(k).size()) throw std::invalid_argument(k);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("parameter '" + k + "' is not a number: " + values.at(k));
    }
  };
  if (name == "example_1_1") return build_example_1_1();
  if (name == "example_1_1_noisy") return build_example_1_1_noisy(number("epsilon"));
  if (name == "example_1_2_discrete") return build_example_1_2_discrete();
  if (name == "generalized_hmm_demo") return build_generalized_hmm_demo();
  if (name == "correlated_noise_hmm_demo") return build_correlated_noise_hmm_demo();
  RandomModelOptions opt;
  opt.hidden = static_cast<std::size_t>(number("hidden"));
  opt.observed = static_cast<std::size_t>(number("observed"));
  opt.nondegenerate = number("nondegenerate") != 0.0;
  opt.seed = std::stoull(values.at("seed"));
  opt.sparsity = number("sparsity");
  return random_model(opt);
}

}  // namespace filter_ergodics
