#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lifts.hpp"
#include "zoo.hpp"

namespace filter_ergodics {

using Json = nlohmann::json;

/// A model as read from disk: the validated kernel plus whatever optional
/// pieces the file carried.
struct LoadedModel {
  std::string name;
  JointKernel kernel;
  std::optional<NondegenFactorization> factorization;
  std::optional<Vector> pi;
};

namespace detail {

inline std::string line_context(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

inline std::vector<std::string> read_labels(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw ParseError(std::string("missing array '") + key + "'");
  std::vector<std::string> out;
  for (const auto& v : j[key]) {
    if (v.is_string()) {
      out.push_back(v.get<std::string>());
    } else if (v.is_number_integer()) {
      out.push_back(std::to_string(v.get<long long>()));
    } else {
      throw ParseError(std::string("labels in '") + key + "' must be strings");
    }
  }
  return out;
}

inline double read_number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError("expected a number at " + where);
  return v.get<double>();
}

inline Matrix read_matrix(const Json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  if (!j.is_array() || j.size() != rows) {
    throw ParseError(what + " must have " + std::to_string(rows) + " rows");
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw ParseError(what + " row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          read_number(j[r][c], what + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

inline Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

inline Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace detail

inline LoadedModel parse_model(const Json& j) {
  if (!j.is_object()) throw ParseError("model file must be a JSON object");
  StateSpace space(detail::read_labels(j, "hidden_labels"), detail::read_labels(j, "observed_labels"));
  const std::size_t ne = space.hidden_size(), nf = space.observed_size(), n = space.size();
  if (!j.contains("kernel") || !j["kernel"].is_object()) throw ParseError("missing object 'kernel'");
  const Json& k = j["kernel"];
  const std::string type = k.value("type", "");
  std::optional<NondegenFactorization> factorization;
  Matrix p;
  if (type == "joint") {
    if (!k.contains("rows")) throw ParseError("joint kernel needs 'rows'");
    p = detail::read_matrix(k["rows"], n, n, "rows");
  } else if (type == "factorized") {
    if (!k.contains("P0") || !k.contains("Q") || !k.contains("g")) {
      throw ParseError("factorized kernel needs 'P0', 'Q' and 'g'");
    }
    NondegenFactorization f{detail::read_matrix(k["P0"], ne, ne, "P0"), detail::read_matrix(k["Q"], nf, nf, "Q"),
                            Matrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))};
    const Json& g = k["g"];
    auto dims_ok = [](const Json& v, std::size_t size) { return v.is_array() && v.size() == size; };
    if (!dims_ok(g, ne)) throw ParseError("g must be nested [z][w][z'][w'] with matching sizes");
    for (std::size_t z = 0; z < ne; ++z) {
      if (!dims_ok(g[z], nf)) throw ParseError("g must be nested [z][w][z'][w'] with matching sizes");
      for (std::size_t w = 0; w < nf; ++w) {
        if (!dims_ok(g[z][w], ne)) throw ParseError("g must be nested [z][w][z'][w'] with matching sizes");
        for (std::size_t z2 = 0; z2 < ne; ++z2) {
          if (!dims_ok(g[z][w][z2], nf)) throw ParseError("g must be nested [z][w][z'][w'] with matching sizes");
          for (std::size_t w2 = 0; w2 < nf; ++w2) {
            f.g(space.index(z, w), space.index(z2, w2)) = detail::read_number(g[z][w][z2][w2], "g");
          }
        }
      }
    }
    p.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        p(a, b) = f.g(a, b) * f.p0(space.hidden_of(a), space.hidden_of(b)) * f.q(space.observed_of(a), space.observed_of(b));
      }
    }
    factorization = std::move(f);
  } else {
    throw ParseError("kernel type must be 'joint' or 'factorized'");
  }
  LoadedModel out{j.value("name", std::string("model")), validate_kernel(std::move(p), std::move(space)),
                  std::move(factorization), std::nullopt};
  if (j.contains("pi") && !j["pi"].is_null()) {
    if (!j["pi"].is_array() || j["pi"].size() != n) throw ParseError("'pi' must have one entry per joint state");
    Vector pi(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) pi(static_cast<Eigen::Index>(i)) = detail::read_number(j["pi"][i], "pi");
    out.pi = std::move(pi);
  }
  return out;
}

inline LoadedModel parse_model_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("malformed JSON at " + detail::line_context(text, e.byte > 0 ? e.byte - 1 : 0) + ": " +
                     e.what());
  }
  try {
    return parse_model(j);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid model file: ") + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline LoadedModel load_model_file(const std::string& path) { return parse_model_text(read_text_file(path)); }

/// Stationary law of a loaded model: the supplied pi when present, otherwise
/// solved.
inline StationaryLaw resolve_law(const LoadedModel& m) {
  return m.pi ? supplied_stationary_law(m.kernel, *m.pi) : stationary_law(m.kernel);
}

inline Json kernel_json(const JointKernel& kernel, const std::optional<NondegenFactorization>& f) {
  const StateSpace& s = kernel.space();
  if (!f) return Json{{"type", "joint"}, {"rows", detail::matrix_json(kernel.matrix())}};
  Json g = Json::array();
  for (std::size_t z = 0; z < s.hidden_size(); ++z) {
    Json gz = Json::array();
    for (std::size_t w = 0; w < s.observed_size(); ++w) {
      Json gzw = Json::array();
      for (std::size_t z2 = 0; z2 < s.hidden_size(); ++z2) {
        Json last = Json::array();
        for (std::size_t w2 = 0; w2 < s.observed_size(); ++w2) last.push_back(f->g(s.index(z, w), s.index(z2, w2)));
        gzw.push_back(std::move(last));
      }
      gz.push_back(std::move(gzw));
    }
    g.push_back(std::move(gz));
  }
  return Json{{"type", "factorized"}, {"P0", detail::matrix_json(f->p0)}, {"Q", detail::matrix_json(f->q)}, {"g", g}};
}

inline Json model_json(const ModelSpec& m) {
  Json params = Json::object();
  for (const auto& [k, v] : m.parameters) params[k] = v;
  Json j{{"name", m.name},
         {"family", family_name(m.family)},
         {"description", m.description},
         {"parameters", params},
         {"hidden_labels", m.kernel.space().hidden_labels()},
         {"observed_labels", m.kernel.space().observed_labels()},
         {"kernel", kernel_json(m.kernel, m.factorization)},
         {"pi", detail::vector_json(m.law.pi)}};
  if (m.hidden_kernel) j["hidden_kernel"] = detail::matrix_json(*m.hidden_kernel);
  return j;
}

inline Json lift_measure_json(const EmpiricalLiftMeasure& m) {
  Json atoms = Json::array();
  for (const auto& a : m.atoms) {
    Json atom{{"nu", a.nu.probs}, {"y", a.y}, {"w", a.weight}};
    if (a.x) atom["x"] = *a.x;
    atoms.push_back(std::move(atom));
  }
  Json j{{"lift", m.kind == LiftKind::kPair ? "pair" : "triple"}, {"atoms", std::move(atoms)}};
  if (m.provenance) {
    j["meta"] = Json{{"seed", m.provenance->seed}, {"burn_in", m.provenance->burn_in}, {"samples", m.provenance->samples}};
  }
  return j;
}

inline EmpiricalLiftMeasure parse_lift_measure(const Json& j) {
  try {
    EmpiricalLiftMeasure m;
    const std::string lift = j.at("lift").get<std::string>();
    if (lift != "pair" && lift != "triple") throw ParseError("lift must be 'pair' or 'triple'");
    m.kind = lift == "pair" ? LiftKind::kPair : LiftKind::kTriple;
    for (const auto& a : j.at("atoms")) {
      LiftAtom atom;
      atom.nu.probs = a.at("nu").get<std::vector<double>>();
      atom.y = a.at("y").get<std::size_t>();
      atom.weight = a.at("w").get<double>();
      if (a.contains("x")) atom.x = a.at("x").get<std::size_t>();
      if (m.kind == LiftKind::kTriple && !atom.x) throw ParseError("triple atoms need 'x'");
      m.atoms.push_back(std::move(atom));
    }
    if (j.contains("meta")) {
      const Json& meta = j["meta"];
      m.provenance = LiftProvenance{meta.at("seed").get<std::uint64_t>(), meta.at("burn_in").get<std::size_t>(),
                                    meta.at("samples").get<std::size_t>()};
    }
    return m;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid lift measure: ") + e.what());
  }
}

}  // namespace filter_ergodics
