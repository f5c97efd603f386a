#pragma once

// JSON encodings shared by the command-line tool and the tests. Exact
// scalars travel as text ("1 + v^-2"), numeric ones as "a+bi" strings with
// 12 significant digits. Indices are 0-based.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "webcat/congruence.hpp"
#include "webcat/error.hpp"
#include "webcat/fiber.hpp"
#include "webcat/linear_map.hpp"
#include "webcat/qscalar.hpp"
#include "webcat/solutions.hpp"
#include "webcat/trilinear.hpp"
#include "webcat/webdiag.hpp"

namespace webcat::json_io {

using json = nlohmann::json;

enum class Mode { exact, numeric };

inline Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "numeric") return Mode::numeric;
  throw Error("ParseError", "mode must be exact or numeric, got '" + s + "'", "mode");
}

inline std::string mode_name(Mode m) { return m == Mode::exact ? "exact" : "numeric"; }

// ------------------------------------------------------------ helpers

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error("ParseError", std::string("missing field '") + key + "'", where);
  return j.at(key);
}

inline std::string string_of(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return os.str();
  }
  throw Error("ParseError", "expected a scalar string or number", where);
}

// ------------------------------------------------------------ scalars

/// {"num": [[exp, "p/q"], ...], "den": [...]}.
inline json field_to_json(const FieldElement& x) {
  auto terms = [](const LaurentPoly& p) {
    json a = json::array();
    for (const auto& [e, c] : p.terms()) a.push_back({e, c.get_str()});
    return a;
  };
  return {{"num", terms(x.num())}, {"den", terms(x.den())}};
}

inline FieldElement field_from_json(const json& j, const std::string& where = "") {
  if (!j.is_object()) {
    try {
      return parse_field_element(string_of(j, where));
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), where);
    }
  }
  auto terms = [&](const char* key) {
    LaurentPoly::Terms t;
    for (const auto& term : field(j, key, where)) {
      if (!term.is_array() || term.size() != 2) throw Error("ParseError", "term must be [exp, coefficient]", where);
      t[term[0].get<int>()] += parse_rational(string_of(term[1], where));
    }
    return LaurentPoly::from_terms(t);
  };
  const LaurentPoly num = terms("num"), den = terms("den");
  if (den.is_zero()) throw Error("DivisionByZero", "zero denominator", where);
  return FieldElement(num) / FieldElement(den);
}

inline std::string scalar_string(const FieldElement& x) { return to_string(x); }
inline std::string scalar_string(const Rational& x) { return x.get_str(); }
inline std::string scalar_string(const Complex& x) { return format_complex(x); }
template <class B>
std::string scalar_string(const QuadExt<B>& x) {
  return scalar_traits<QuadExt<B>>::str(x);
}

/// Parses an exact entry; numeric specs also accept exact expressions in v,
/// specialized at the fiber spec's v.
template <class S>
S scalar_from_json(const json& j, const S& v, const std::string& where);

template <>
inline FieldElement scalar_from_json<FieldElement>(const json& j, const FieldElement&, const std::string& where) {
  return field_from_json(j, where);
}

template <>
inline Complex scalar_from_json<Complex>(const json& j, const Complex& v, const std::string& where) {
  if (j.is_object()) return specialize(field_from_json(j, where), v);
  const std::string s = string_of(j, where);
  try {
    return parse_complex(s);
  } catch (const Error&) {
  }
  try {
    return specialize(parse_field_element(s), v);
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), where);
  }
}

template <>
inline Rational scalar_from_json<Rational>(const json& j, const Rational&, const std::string& where) {
  try {
    return parse_rational(string_of(j, where));
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), where);
  }
}

// ------------------------------------------------------------ diagrams

inline json diagram_to_json(const LayeredDiagram& d) {
  auto word = [](const Word& w) {
    json a = json::array();
    for (Label l : w) a.push_back(label_name(l));
    return a;
  };
  json layers = json::array();
  for (const auto& l : d.layers) layers.push_back({{"offset", l.offset}, {"gen", gen_name(l.gen)}});
  return {{"category", category_name(d.category)}, {"domain", word(d.domain)}, {"codomain", word(d.codomain)},
          {"layers", layers}};
}

inline LayeredDiagram diagram_from_json(const json& j) {
  const Category c = parse_category(field(j, "category", "category").get<std::string>());
  auto word = [&](const char* key) {
    Word w;
    for (const auto& s : field(j, key, key)) w.push_back(parse_label(s.get<std::string>()));
    return w;
  };
  LayeredDiagram d;
  d.category = c;
  d.domain = word("domain");
  std::vector<Layer> layers;
  std::size_t i = 0;
  for (const auto& l : field(j, "layers", "layers")) {
    const std::string where = "layers[" + std::to_string(i++) + "]";
    const long long off = field(l, "offset", where).get<long long>();
    if (off < 0) throw Error("TypeMismatch", "negative layer offset", where);
    layers.push_back({static_cast<std::size_t>(off), parse_gen(field(l, "gen", where).get<std::string>())});
  }
  d = make_diagram(c, d.domain, layers);
  if (j.contains("codomain")) {
    const Word declared = word("codomain");
    if (declared != d.codomain) throw Error("TypeMismatch", "declared codomain does not match the layers", "codomain");
  }
  return d;
}

// ------------------------------------------------------------ matrices and maps

template <class S>
json matrix_to_json(const Matrix<S>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(scalar_string(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

template <class S>
Matrix<S> matrix_from_json(const json& j, const S& v, const std::string& where) {
  if (!j.is_array() || j.empty()) throw Error("BadDims", "matrix must be a nonempty array of rows", where);
  const std::size_t rows = j.size(), cols = j[0].size();
  Matrix<S> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw Error("BadDims", "ragged matrix rows", where);
    for (std::size_t k = 0; k < cols; ++k)
      m(i, k) = scalar_from_json<S>(j[i][k], v, where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  return m;
}

/// {"rows": r, "cols": c, "entries": [[i, j, "value"], ...]}, nonzero entries only.
template <class S>
json linear_map_to_json(const LinearMap<S>& m) {
  json entries = json::array();
  for (const auto& [i, j, x] : m.entries()) entries.push_back({i, j, scalar_string(x)});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

template <class S>
LinearMap<S> linear_map_from_json(const json& j, const S& v) {
  LinearMap<S> m(field(j, "rows", "rows").get<std::size_t>(), field(j, "cols", "cols").get<std::size_t>());
  for (const auto& e : field(j, "entries", "entries")) {
    const auto r = e.at(0).get<std::size_t>(), c = e.at(1).get<std::size_t>();
    if (r >= m.rows() || c >= m.cols()) throw Error("BadDims", "entry index out of range", "entries");
    m.set(r, c, scalar_from_json<S>(e.at(2), v, "entries"));
  }
  return m;
}

// ------------------------------------------------------------ tensors and specs

template <class S>
json tensor_to_json(const Tensor3<S>& t) {
  json entries = json::array();
  for (const auto& [idx, x] : t.entries()) entries.push_back({idx[0], idx[1], idx[2], scalar_string(x)});
  return {{"dims", {t.dims()[0], t.dims()[1], t.dims()[2]}}, {"entries", entries}};
}

template <class S>
Tensor3<S> tensor_from_json(const json& j, const S& v, const std::string& where = "T") {
  const json& dims = field(j, "dims", where);
  if (!dims.is_array() || dims.size() != 3) throw Error("BadDims", "tensor dims must have three entries", where + ".dims");
  Tensor3<S> t(dims[0].get<std::size_t>(), dims[1].get<std::size_t>(), dims[2].get<std::size_t>());
  std::size_t n = 0;
  for (const auto& e : field(j, "entries", where)) {
    const std::string at = where + ".entries[" + std::to_string(n++) + "]";
    if (!e.is_array() || e.size() != 4) throw Error("ParseError", "tensor entry must be [i, j, k, value]", at);
    t.set(e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<std::size_t>(), scalar_from_json<S>(e[3], v, at));
  }
  return t;
}

/// Mode and v of a spec document: exact specs use the symbolic v; numeric
/// ones read "v" or else take the principal square root of "q".
inline Mode spec_mode(const json& j) {
  return j.contains("mode") ? parse_mode(j.at("mode").get<std::string>()) : Mode::exact;
}

inline Complex spec_v(const json& j) {
  if (j.contains("v")) return parse_complex(string_of(j.at("v"), "v"));
  if (j.contains("q")) {
    const std::string q = string_of(j.at("q"), "q");
    if (q == "generic") throw Error("ParseError", "numeric specs need a concrete q", "q");
    return std::sqrt(parse_complex(q));
  }
  throw Error("ParseError", "numeric specs need q or v", "q");
}

template <class S>
FiberSpec<S> spec_from_json(const json& j, const S& v, double eps) {
  const Category c = parse_category(field(j, "category", "category").get<std::string>());
  Matrix<S> M = matrix_from_json<S>(field(j, "M", "M"), v, "M");
  if (j.contains("n") && j.at("n").get<std::size_t>() != M.rows())
    throw Error("BadDims", "n does not match the size of M", "n");
  std::optional<Tensor3<S>> T;
  if (j.contains("T")) T = tensor_from_json<S>(j.at("T"), v);
  const int P = j.contains("P") ? j.at("P").get<int>() : 1;
  FiberSpec<S> s = make_spec(c, M, v, T, P, eps);
  if (j.contains("vertex_pair_scale"))
    s.vertex_pair_scale = scalar_from_json<S>(j.at("vertex_pair_scale"), v, "vertex_pair_scale");
  return s;
}

template <class S>
json spec_to_json(const FiberSpec<S>& s) {
  json j = {{"category", category_name(s.category)},
            {"n", s.n},
            {"M", matrix_to_json(s.M)},
            {"mode", scalar_traits<S>::exact ? "exact" : "numeric"}};
  if constexpr (std::is_same_v<S, Complex>) j["v"] = format_complex(s.v);
  if constexpr (std::is_same_v<S, FieldElement>) j["q"] = "generic";
  if (s.T) j["T"] = tensor_to_json(*s.T);
  if (s.category == Category::gl2) j["P"] = s.P;
  if (!(s.vertex_pair_scale == scalar_traits<S>::one())) j["vertex_pair_scale"] = scalar_string(s.vertex_pair_scale);
  return j;
}

// ------------------------------------------------------------ canonical forms

inline json lambda_to_json(const BlockLambda& l) {
  switch (l.kind) {
    case BlockLambda::Kind::Exact: return to_string(l.value);
    case BlockLambda::Kind::QuadraticPair: return {{"trace", to_string(l.value)}};
    case BlockLambda::Kind::Numeric: return {{"numeric", format_complex(l.z)}};
    default: return nullptr;
  }
}

inline BlockLambda lambda_from_json(const json& j, const std::string& where) {
  if (j.is_object() && j.contains("trace")) return BlockLambda::pair(field_from_json(j.at("trace"), where));
  if (j.is_object() && j.contains("numeric")) return BlockLambda::numeric(parse_complex(string_of(j.at("numeric"), where)));
  return BlockLambda::exact(field_from_json(j, where));
}

inline json form_to_json(const CanonicalForm& f) {
  json blocks = json::array();
  for (const auto& b : f.blocks) {
    switch (b.kind) {
      case BlockKind::Gamma: blocks.push_back({{"kind", "Gamma"}, {"j", b.size}}); break;
      case BlockKind::H: blocks.push_back({{"kind", "H"}, {"k", b.size}, {"lambda", lambda_to_json(b.lambda)}}); break;
      case BlockKind::JordanZero: blocks.push_back({{"kind", "J0"}, {"i", b.size}}); break;
    }
  }
  return {{"blocks", blocks}, {"text", to_string(f)}};
}

inline CanonicalForm form_from_json(const json& j) {
  CanonicalForm f;
  std::size_t n = 0;
  for (const auto& b : field(j, "blocks", "blocks")) {
    const std::string where = "blocks[" + std::to_string(n++) + "]";
    const std::string kind = field(b, "kind", where).get<std::string>();
    if (kind == "Gamma") f.blocks.push_back(gamma_block(field(b, "j", where).get<int>()));
    else if (kind == "H")
      f.blocks.push_back(h_block(field(b, "k", where).get<int>(), lambda_from_json(field(b, "lambda", where), where)));
    else if (kind == "J0") f.blocks.push_back({BlockKind::JordanZero, field(b, "i", where).get<int>(), {}});
    else throw Error("ParseError", "unknown block kind '" + kind + "'", where);
  }
  return f;
}

// ------------------------------------------------------------ solutions

inline json complex_list(const std::vector<Complex>& zs) {
  json a = json::array();
  for (auto z : zs) a.push_back(format_complex(z));
  return a;
}

template <class S>
json enumeration_to_json(const Enumeration<S>& e) {
  json families = json::array();
  for (const auto& f : e.families) {
    json j = {{"structure", to_string(f.structure)},
              {"gammas", f.structure.gammas},
              {"hs", f.structure.hs},
              {"parametric", f.parametric},
              {"free_parameters", f.free_parameters()},
              {"contains_standard", f.contains_standard}};
    if (!f.structure.hs.empty()) {
      // λ solves a λ^2 + (b + Σ k_i (μ_i + 1/μ_i)) λ + a = 0
      j["quadratic"] = {{"a", scalar_string(f.a)}, {"b", scalar_string(f.b)}};
    }
    if (f.roots) j["roots"] = {scalar_string(f.roots->first), scalar_string(f.roots->second)};
    families.push_back(j);
  }
  json special = json::array();
  for (const auto& s : e.special)
    special.push_back({{"structure", to_string(s.structure)},
                       {"q_polynomial", s.q_polynomial},
                       {"q_roots", complex_list(s.q_roots)}});
  return {{"families", families}, {"special", special}};
}

template <class S>
json witness_to_json(const Witness<S>& w) {
  if (w.in_base) return {{"in_base", true}, {"matrix", matrix_to_json(w.matrix)}};
  return {{"in_base", false},
          {"matrix", matrix_to_json(w.ext_matrix)},
          {"x_minimal_polynomial", "x^2 + (" + scalar_string(w.x_linear) + ")*x + 1"}};
}

// ------------------------------------------------------------ trilinear

inline json count_to_json(const PointCount& c) { return c ? json(*c) : json("inf"); }

inline PointCount count_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return std::nullopt;
  return j.get<long>();
}

inline json invariants_to_json(const TrilinearInvariants& inv) {
  json counts = json::array(), types = json::array(), js = json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    counts.push_back(count_to_json(inv.counts[i]));
    types.push_back(inv.types[i].tag);
    js.push_back(inv.types[i].j ? json(inv.types[i].j->get_str()) : json(nullptr));
  }
  json out = {{"counts", counts}, {"types", types}};
  bool any_j = false;
  for (const auto& t : inv.types) any_j = any_j || t.j.has_value();
  if (any_j) out["j"] = js;
  return out;
}

inline TrilinearInvariants invariants_from_json(const json& j) {
  TrilinearInvariants inv;
  for (std::size_t i = 0; i < 3; ++i) {
    inv.counts[i] = count_from_json(field(j, "counts", "counts").at(i));
    inv.types[i].tag = field(j, "types", "types").at(i).get<int>();
    if (j.contains("j") && !j.at("j").at(i).is_null()) inv.types[i].j = parse_rational(j.at("j").at(i).get<std::string>());
  }
  return inv;
}

/// A trilinear document is either a bare tensor {"dims","entries"} or a
/// spec-like object carrying it under "T".
inline Tensor3<Rational> rational_tensor_from_json(const json& j) {
  const json& t = j.contains("T") ? j.at("T") : j;
  return tensor_from_json<Rational>(t, Rational(1), j.contains("T") ? "T" : "tensor");
}

}  // namespace webcat::json_io
