#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "lifts.hpp"

namespace filter_ergodics {

/// Test function on P(E) x F. Either 1{y = w} nu(z)^power (power in {1, 2})
/// or the cross moment nu(z) nu(z2). All values lie in [0, 1].
struct BatteryFunction {
  enum class Kind { kPower, kCross };
  Kind kind = Kind::kPower;
  std::size_t z = 0;
  std::size_t z2 = 0;
  std::size_t w = 0;
  int power = 1;
  std::string id;

  double operator()(const FilterState& nu, std::size_t y) const {
    if (kind == Kind::kCross) return nu.probs[z] * nu.probs[z2];
    if (y != w) return 0.0;
    const double v = nu.probs[z];
    return power == 1 ? v : v * v;
  }
};

/// Moment battery standing in for a measure-determining class: first and
/// second powers of each coordinate on each observation slice, plus all
/// pairwise cross moments.
struct TestFunctionBattery {
  std::vector<BatteryFunction> functions;

  static TestFunctionBattery standard(const StateSpace& s) {
    TestFunctionBattery b;
    for (int k = 1; k <= 2; ++k) {
      for (std::size_t z = 0; z < s.hidden_size(); ++z) {
        for (std::size_t w = 0; w < s.observed_size(); ++w) {
          b.functions.push_back({BatteryFunction::Kind::kPower, z, z, w, k,
                                 "pow" + std::to_string(k) + "_z" + std::to_string(z) + "_w" +
                                     std::to_string(w)});
        }
      }
    }
    for (std::size_t z = 0; z < s.hidden_size(); ++z) {
      for (std::size_t z2 = z + 1; z2 < s.hidden_size(); ++z2) {
        b.functions.push_back({BatteryFunction::Kind::kCross, z, z2, 0, 1,
                               "cross_z" + std::to_string(z) + "_z" + std::to_string(z2)});
      }
    }
    return b;
  }

  std::size_t size() const noexcept { return functions.size(); }
};

struct MeanEstimate {
  double mean = 0.0;
  double se = 0.0;
};

inline constexpr std::size_t kDefaultBatches = 100;

/// Weighted mean of per-atom values with a batch-means standard error over
/// contiguous batches, which accounts for autocorrelation along a simulated
/// path. Measures with fewer than 2 * batches atoms are treated as exact (se = 0).
inline MeanEstimate batch_mean(const std::vector<double>& values, const std::vector<double>& weights,
                               std::size_t batches = kDefaultBatches) {
  MeanEstimate est;
  double wsum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    est.mean += weights[i] * values[i];
    wsum += weights[i];
  }
  if (wsum > 0.0) est.mean /= wsum;
  if (batches < 2 || values.size() < 2 * batches) return est;
  std::vector<double> means(batches, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t lo = b * values.size() / batches;
    const std::size_t hi = (b + 1) * values.size() / batches;
    double s = 0.0, ws = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      s += weights[i] * values[i];
      ws += weights[i];
    }
    means[b] = ws > 0.0 ? s / ws : 0.0;
  }
  double mbar = 0.0;
  for (double m : means) mbar += m;
  mbar /= static_cast<double>(batches);
  double var = 0.0;
  for (double m : means) var += (m - mbar) * (m - mbar);
  var /= static_cast<double>(batches - 1);
  est.se = std::sqrt(var / static_cast<double>(batches));
  return est;
}

/// Discrepancy in standard-error units; exact agreement (within 1e-12) with
/// zero error counts as 0, any other disagreement with zero error as infinity.
inline double z_score(double diff, double se) {
  if (se > 0.0) return std::abs(diff) / se;
  return std::abs(diff) <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
}

struct ComparisonRow {
  std::string function_id;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double se = 0.0;
  double z_score = 0.0;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  double threshold = 3.0;
  bool indistinguishable = true;
  double max_z = 0.0;
};

inline ComparisonReport compare_lift_measures(const EmpiricalLiftMeasure& a, const EmpiricalLiftMeasure& b,
                                              const TestFunctionBattery& battery, double threshold = 3.0,
                                              std::size_t batches = kDefaultBatches) {
  ComparisonReport report;
  report.threshold = threshold;
  auto weights = [](const EmpiricalLiftMeasure& m) {
    std::vector<double> w;
    w.reserve(m.atoms.size());
    for (const auto& atom : m.atoms) w.push_back(atom.weight);
    return w;
  };
  const auto wa = weights(a);
  const auto wb = weights(b);
  std::vector<double> va(a.atoms.size()), vb(b.atoms.size());
  for (const auto& f : battery.functions) {
    for (std::size_t i = 0; i < a.atoms.size(); ++i) va[i] = f(a.atoms[i].nu, a.atoms[i].y);
    for (std::size_t i = 0; i < b.atoms.size(); ++i) vb[i] = f(b.atoms[i].nu, b.atoms[i].y);
    const MeanEstimate ea = batch_mean(va, wa, batches);
    const MeanEstimate eb = batch_mean(vb, wb, batches);
    ComparisonRow row{f.id, ea.mean, eb.mean, std::sqrt(ea.se * ea.se + eb.se * eb.se), 0.0};
    row.z_score = z_score(ea.mean - eb.mean, row.se);
    report.max_z = std::max(report.max_z, row.z_score);
    if (!(row.z_score < threshold)) report.indistinguishable = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

struct ClassMRow {
  std::size_t hidden_state = 0;
  std::string function_id;
  double joint_mass = 0.0;     // sum w 1{x = b} f(nu, y)
  double filter_mass = 0.0;    // sum w nu(b) f(nu, y)
  double se = 0.0;
  double z_score = 0.0;
};

struct ClassMReport {
  std::vector<ClassMRow> rows;
  double threshold = 3.0;
  bool member = true;
  double max_z = 0.0;
};

/// Sampled test of whether nu is the conditional law of x given (nu, y):
/// compares sum w 1{x = b} f against sum w nu(b) f for every hidden b and
/// battery function f, using the per-atom differences for the error estimate.
inline ClassMReport class_M_check(const EmpiricalLiftMeasure& m, const TestFunctionBattery& battery,
                                  double threshold = 3.0, std::size_t batches = kDefaultBatches) {
  if (m.kind != LiftKind::kTriple) throw ValidationError("class membership needs a triple lift");
  ClassMReport report;
  report.threshold = threshold;
  if (m.atoms.empty()) return report;
  const std::size_t ne = m.atoms.front().nu.size();
  std::vector<double> weights, diff(m.atoms.size()), lhs(m.atoms.size()), rhs(m.atoms.size());
  for (const auto& atom : m.atoms) weights.push_back(atom.weight);
  for (std::size_t b = 0; b < ne; ++b) {
    for (const auto& f : battery.functions) {
      for (std::size_t i = 0; i < m.atoms.size(); ++i) {
        const auto& atom = m.atoms[i];
        const double fv = f(atom.nu, atom.y);
        lhs[i] = (atom.x.value() == b ? 1.0 : 0.0) * fv;
        rhs[i] = atom.nu.probs[b] * fv;
        diff[i] = lhs[i] - rhs[i];
      }
      const MeanEstimate d = batch_mean(diff, weights, batches);
      ClassMRow row{b, f.id, batch_mean(lhs, weights, 0).mean, batch_mean(rhs, weights, 0).mean, d.se, 0.0};
      row.z_score = z_score(d.mean, d.se);
      report.max_z = std::max(report.max_z, row.z_score);
      if (!(row.z_score < threshold)) report.member = false;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace filter_ergodics
