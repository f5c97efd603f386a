// webcat: command-line front end. Every command prints one JSON document;
// exit 0 on success, 2 on invalid input (with {code, message, location}),
// 64 on usage errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "webcat/congruence.hpp"
#include "webcat/fiber.hpp"
#include "webcat/json_io.hpp"
#include "webcat/solutions.hpp"
#include "webcat/trilinear.hpp"

namespace {

using namespace webcat;
using json_io::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitUsage = 64;

struct Options {
  std::string category;
  std::string mode = "exact";
  std::string q = "generic";
  std::optional<double> eps;
  std::string in;
  std::string out;
  std::string spec;
  int k = 0;
  int l = 0;
  int n = 0;
  bool count_only = false;
  std::vector<std::string> files;
};

double effective_eps(const Options& o) {
  if (o.eps) return *o.eps;
  if (const char* env = std::getenv("WEBCAT_EPS")) {
    try {
      return std::stod(env);
    } catch (...) {
      throw Error("ParseError", "WEBCAT_EPS is not a number", "WEBCAT_EPS");
    }
  }
  return kDefaultEps;
}

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("IOError", "cannot open '" + path + "'", path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw Error("ParseError", e.what(), path);
  }
}

Category category_of(const Options& o, const std::string& fallback = "") {
  const std::string c = o.category.empty() ? fallback : o.category;
  if (c.empty()) throw Error("ParseError", "--category is required", "category");
  return parse_category(c);
}

json_io::Mode mode_of(const Options& o) { return json_io::parse_mode(o.mode); }

/// v for numeric evaluation: the principal square root of --q.
Complex numeric_v(const Options& o) {
  if (o.q == "generic") throw Error("ParseError", "numeric mode needs a concrete --q", "q");
  return std::sqrt(parse_complex(o.q));
}

FiberSpec<FieldElement> standard_spec(Category c) {
  switch (c) {
    case Category::sl2: return sl2_standard_spec();
    case Category::gl2: return gl2_standard_triple(standard_gl2_matrix(FieldElement::v()), FieldElement::v());
    case Category::so3: return sym2_standard_pair();
  }
  throw Error("ParseError", "unknown category", "category");
}

using AnySpec = std::variant<FiberSpec<FieldElement>, FiberSpec<Complex>>;

/// The fiber spec from --spec (or `path`), else the standard spec of the category;
/// numeric mode specializes exact data at v = sqrt(q).
AnySpec load_spec(const Options& o, const std::string& path, const std::string& fallback_category = "") {
  const double eps = effective_eps(o);
  std::optional<FiberSpec<FieldElement>> exact;
  if (!path.empty()) {
    const json j = read_json(path);
    if (json_io::spec_mode(j) == json_io::Mode::numeric) {
      const Complex v = j.contains("q") || j.contains("v") ? json_io::spec_v(j) : numeric_v(o);
      return json_io::spec_from_json<Complex>(j, v, eps);
    }
    exact = json_io::spec_from_json<FieldElement>(j, FieldElement::v(), eps);
  } else {
    exact = standard_spec(category_of(o, fallback_category));
  }
  if (mode_of(o) == json_io::Mode::numeric) return specialize_spec(*exact, numeric_v(o), eps);
  return *exact;
}

template <class S>
Matrix<S> load_matrix(const json& j, const S& v) {
  const json& m = j.is_object() ? json_io::field(j, "M", "M") : j;
  return json_io::matrix_from_json<S>(m, v, "M");
}

// ------------------------------------------------------------ commands

json cmd_eval(const Options& o) {
  if (o.in.empty()) throw Error("ParseError", "eval needs --in <diagram.json>", "in");
  const LayeredDiagram d = json_io::diagram_from_json(read_json(o.in));
  if (!o.category.empty() && parse_category(o.category) != d.category)
    throw Error("TypeMismatch", "--category differs from the diagram's category", "category");
  const AnySpec spec = load_spec(o, o.spec, category_name(d.category));
  return std::visit(
      [&](const auto& s) {
        const auto ev = evaluate(s, d);
        json j = json_io::linear_map_to_json(ev.map);
        if (ev.missing_half_scale) j["missing_half_scale"] = true;
        return j;
      },
      spec);
}

json cmd_relations(const Options& o) {
  const AnySpec spec = load_spec(o, o.spec.empty() ? o.in : o.spec);
  return std::visit(
      [](const auto& s) {
        json rel = json::array();
        bool all = true;
        for (const auto& r : check_all_relations(s)) {
          rel.push_back({{"name", r.name}, {"pass", r.pass}, {"max_abs_residual", r.max_abs_residual}});
          all = all && r.pass;
        }
        return json{{"relations", rel}, {"all_pass", all}};
      },
      spec);
}

json cmd_basis(const Options& o) {
  if (o.k < 0 || o.l < 0) throw Error("BadDims", "--k and --l must be nonnegative", "k");
  const auto basis = basis_diagrams(category_of(o), o.k, o.l);
  json j = {{"count", basis.size()}};
  if (!o.count_only) {
    json ds = json::array();
    for (const auto& d : basis) ds.push_back(json_io::diagram_to_json(d));
    j["diagrams"] = ds;
  }
  return j;
}

json cmd_trace(const Options& o) {
  const AnySpec spec = load_spec(o, o.spec.empty() ? o.in : o.spec);
  return std::visit(
      [](const auto& s) {
        const auto r = check_trace_condition(s);
        return json{{"value", json_io::scalar_string(r.value)},
                    {"target", json_io::scalar_string(r.target)},
                    {"pass", r.pass}};
      },
      spec);
}

template <class F>
json with_matrix(const Options& o, const json& j, F f) {
  if (mode_of(o) == json_io::Mode::numeric) {
    const Complex v = numeric_v(o);
    return f(load_matrix<Complex>(j, v));
  }
  return f(load_matrix<FieldElement>(j, FieldElement::v()));
}

json cmd_canonical(const Options& o) {
  const std::string path = !o.in.empty() ? o.in : (o.files.empty() ? "" : o.files[0]);
  if (path.empty()) throw Error("ParseError", "canonical needs --in <matrix.json>", "in");
  const double eps = effective_eps(o);
  return with_matrix(o, read_json(path), [&](const auto& M) { return json_io::form_to_json(canonical_form(M, eps)); });
}

json cmd_congruent(const Options& o) {
  std::vector<std::string> paths = o.files;
  if (!o.in.empty()) paths.insert(paths.begin(), o.in);
  if (paths.size() != 2) throw Error("ParseError", "congruent needs two matrix files", "files");
  const double eps = effective_eps(o);
  const json a = read_json(paths[0]), b = read_json(paths[1]);
  if (mode_of(o) == json_io::Mode::numeric) {
    const Complex v = numeric_v(o);
    return {{"congruent", congruent(load_matrix<Complex>(a, v), load_matrix<Complex>(b, v), eps)}};
  }
  return {{"congruent", congruent(load_matrix<FieldElement>(a, FieldElement::v()),
                                  load_matrix<FieldElement>(b, FieldElement::v()), eps)}};
}

/// Runs f on the requested q: symbolic for "generic", rational for exact
/// rational values, complex otherwise.
template <class F>
json with_q(const Options& o, F f) {
  if (o.q == "generic") {
    if (mode_of(o) == json_io::Mode::numeric) throw Error("ParseError", "numeric mode needs a concrete --q", "q");
    return f(FieldElement::q());
  }
  if (mode_of(o) == json_io::Mode::exact) {
    try {
      return f(parse_rational(o.q));
    } catch (const Error& e) {
      if (e.code() != "ParseError") throw;
    }
  }
  return f(parse_complex(o.q));
}

json cmd_enumerate(const Options& o) {
  const Category c = category_of(o);
  const double eps = effective_eps(o);
  return with_q(o, [&](const auto& q) { return json_io::enumeration_to_json(enumerate_solutions(c, o.n, q, eps)); });
}

json cmd_witness(const Options& o) {
  const Category c = category_of(o);
  const double eps = effective_eps(o);
  return with_q(o, [&](const auto& q) { return json_io::witness_to_json(existence_witness(c, o.n, q, eps)); });
}

json cubic_json(const TernaryCubic& c) {
  json coeffs = json::array();
  for (const auto& x : c.coefficients()) coeffs.push_back(x.get_str());
  return coeffs;
}

json cmd_trilinear_classify(const Options& o) {
  const std::string path = !o.in.empty() ? o.in : (o.files.empty() ? "" : o.files[0]);
  if (path.empty()) throw Error("ParseError", "trilinear classify needs a tensor file", "in");
  const Tensor3<Rational> t = json_io::rational_tensor_from_json(read_json(path));
  json j = json_io::invariants_to_json(invariants(t));
  json cubics = json::array();
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) cubics.push_back(cubic_json(slice_cubic(t, a)));
  j["cubics"] = cubics;
  return j;
}

json cmd_trilinear_equiv(const Options& o) {
  std::vector<std::string> paths = o.files;
  if (!o.in.empty()) paths.insert(paths.begin(), o.in);
  if (paths.size() != 2) throw Error("ParseError", "trilinear equiv needs two tensor files", "files");
  const auto a = invariants(json_io::rational_tensor_from_json(read_json(paths[0])));
  const auto b = invariants(json_io::rational_tensor_from_json(read_json(paths[1])));
  return {{"result", to_string(equivalent(a, b))},
          {"a", json_io::invariants_to_json(a)},
          {"b", json_io::invariants_to_json(b)}};
}

json cmd_flip_test(const Options& o) {
  const AnySpec spec = load_spec(o, o.spec.empty() ? o.in : o.spec);
  return std::visit([](const auto& s) { return json{{"flip", flip_test(s)}}; }, spec);
}

json cmd_faithful(const Options& o) {
  const AnySpec spec = load_spec(o, o.spec.empty() ? o.in : o.spec);
  return std::visit(
      [&](const auto& s) {
        return json{{"faithful", faithfulness_check(s, o.k, o.l)},
                    {"basis_size", basis_diagrams(s.category, o.k, o.l).size()}};
      },
      spec);
}

void emit(const Options& o, const json& j) {
  const std::string text = j.dump() + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error("IOError", "cannot write '" + o.out + "'", o.out);
  f << text;
}

json error_json(const std::string& code, const std::string& message, const std::string& location) {
  return {{"code", code}, {"message", message}, {"location", location}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate and classify web-category fiber data"};
  app.require_subcommand(1);
  Options o;
  std::string eps_text;

  auto common = [&](CLI::App* c) {
    c->add_option("--category", o.category, "sl2, gl2 or so3")->check(CLI::IsMember({"sl2", "gl2", "so3"}));
    c->add_option("--mode", o.mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
    c->add_option("--q", o.q, "\"generic\" or a complex value a+bi");
    c->add_option("--eps", eps_text, "numeric tolerance");
    c->add_option("--in", o.in, "input JSON file");
    c->add_option("--out", o.out, "write the result here instead of stdout");
    c->add_option("--spec", o.spec, "fiber spec JSON (defaults to the standard spec)");
  };

  std::map<CLI::App*, json (*)(const Options&)> handlers;
  auto add = [&](const std::string& name, const std::string& help, json (*h)(const Options&), CLI::App* parent) {
    CLI::App* c = parent->add_subcommand(name, help);
    common(c);
    handlers[c] = h;
    return c;
  };

  add("eval", "evaluate a diagram", cmd_eval, &app);
  add("relations", "check every defining relation", cmd_relations, &app);
  CLI::App* basis = add("basis", "basis of Hom(k, l)", cmd_basis, &app);
  basis->add_option("--k", o.k, "bottom boundary points");
  basis->add_option("--l", o.l, "top boundary points");
  basis->add_flag("--count-only", o.count_only, "report only the count");
  add("trace", "trace condition tr(M^T M^-1)", cmd_trace, &app);
  add("canonical", "congruence canonical form", cmd_canonical, &app)->add_option("files", o.files, "matrix file");
  add("congruent", "congruence test of two matrices", cmd_congruent, &app)->add_option("files", o.files, "matrix files");
  add("enumerate", "solutions of the trace equation", cmd_enumerate, &app)->add_option("--n", o.n, "dimension");
  add("witness", "explicit solution matrix", cmd_witness, &app)->add_option("--n", o.n, "dimension");
  add("trilinear-classify", "invariants of a 3x3x3 tensor", cmd_trilinear_classify, &app)
      ->add_option("files", o.files, "tensor file");
  add("trilinear-equiv", "equivalence test of two tensors", cmd_trilinear_equiv, &app)
      ->add_option("files", o.files, "tensor files");
  CLI::App* tri = app.add_subcommand("trilinear", "trilinear forms");
  tri->require_subcommand(1);
  add("classify", "invariants of a 3x3x3 tensor", cmd_trilinear_classify, tri)->add_option("files", o.files, "tensor file");
  add("equiv", "equivalence test of two tensors", cmd_trilinear_equiv, tri)->add_option("files", o.files, "tensor files");
  add("flip-test", "does the crossing equal the flip map", cmd_flip_test, &app);
  CLI::App* faithful = add("faithful", "linear independence of basis images", cmd_faithful, &app);
  faithful->add_option("--k", o.k, "bottom boundary points");
  faithful->add_option("--l", o.l, "top boundary points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  CLI::App* chosen = nullptr;
  for (auto& [c, h] : handlers)
    if (c->parsed()) chosen = c;
  try {
    if (!eps_text.empty()) {
      try {
        o.eps = std::stod(eps_text);
      } catch (...) {
        throw Error("ParseError", "--eps is not a number", "eps");
      }
    }
    emit(o, handlers.at(chosen)(o));
    return kExitOk;
  } catch (const Error& e) {
    std::cout << error_json(e.code(), e.what(), e.location()).dump() << "\n";
    return kExitInvalid;
  } catch (const json::exception& e) {
    std::cout << error_json("ParseError", e.what(), "").dump() << "\n";
    return kExitInvalid;
  }
}
