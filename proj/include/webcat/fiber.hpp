#pragma once

// Fiber functors of the web categories: generator images from linear data,
// diagram evaluation, and relation checks.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "webcat/linear_map.hpp"
#include "webcat/matrix.hpp"
#include "webcat/qscalar.hpp"
#include "webcat/webdiag.hpp"

namespace webcat {

template <class S>
class Tensor3 {
 public:
  using Index = std::array<std::size_t, 3>;

  Tensor3() = default;
  Tensor3(std::size_t a, std::size_t b, std::size_t c) : dims_{a, b, c} {}

  const Index& dims() const { return dims_; }
  const std::map<Index, S>& entries() const { return entries_; }

  S at(std::size_t i, std::size_t j, std::size_t k) const {
    auto it = entries_.find({i, j, k});
    return it == entries_.end() ? scalar_traits<S>::zero() : it->second;
  }
  void set(std::size_t i, std::size_t j, std::size_t k, const S& x) {
    if (i >= dims_[0] || j >= dims_[1] || k >= dims_[2]) throw Error("BadDims", "tensor index out of range");
    if (scalar_traits<S>::is_zero(x, 0)) entries_.erase({i, j, k});
    else entries_[{i, j, k}] = x;
  }
  bool is_zero() const { return entries_.empty(); }

  template <class F>
  auto map_entries(F f) const {
    using R = std::decay_t<decltype(f(std::declval<const S&>()))>;
    Tensor3<R> t(dims_[0], dims_[1], dims_[2]);
    for (const auto& [idx, x] : entries_) t.set(idx[0], idx[1], idx[2], f(x));
    return t;
  }
  friend bool operator==(const Tensor3& a, const Tensor3& b) {
    return a.dims_ == b.dims_ && a.entries_ == b.entries_;
  }

 private:
  Index dims_{0, 0, 0};
  std::map<Index, S> entries_;
};

/// Linear data of a rank-one fiber functor.
///   sl2: (n, M); gl2: (n, M, P, T) with T of shape n x 1 x n; so3: (n, M, T).
/// `v` is the chosen square root of q. Each pair of trivalent vertices in an
/// evaluated diagram is multiplied by `vertex_pair_scale`; this lets the
/// exact so3 standard pair store s*T (no square root) with the factor 1/s^2
/// applied per vertex pair.
template <class S>
struct FiberSpec {
  Category category = Category::sl2;
  std::size_t n = 0;
  Matrix<S> M;
  Matrix<S> Minv;
  int P = 1;
  std::optional<Tensor3<S>> T;
  S v = scalar_traits<S>::one();
  S vertex_pair_scale = scalar_traits<S>::one();
  double eps = kDefaultEps;

  S q() const { return v * v; }
};

/// Checks shapes and caches M^-1.
template <class S>
FiberSpec<S> make_spec(Category c, const Matrix<S>& M, const S& v, std::optional<Tensor3<S>> T = std::nullopt,
                       int P = 1, double eps = kDefaultEps) {
  if (!M.square() || M.rows() == 0) throw Error("BadDims", "bilinear form must be a nonempty square matrix", "M");
  FiberSpec<S> s;
  s.category = c;
  s.n = M.rows();
  s.M = M;
  s.Minv = M.inverse(eps);
  s.P = P;
  s.v = v;
  s.eps = eps;
  if (scalar_traits<S>::is_zero(v, eps)) throw Error("UndefinedAtQ", "q = 0 is excluded", "q");
  if (P != 1 && P != -1) throw Error("BadDims", "phantom sign must be +1 or -1", "P");
  if (c == Category::gl2) {
    if (!T) throw Error("BadDims", "gl2 data needs a trilinear form", "T");
    if (T->dims() != typename Tensor3<S>::Index{s.n, 1, s.n}) throw Error("BadDims", "gl2 tensor must be n x 1 x n", "T");
  }
  if (c == Category::so3) {
    if (!T) throw Error("BadDims", "so3 data needs a trilinear form", "T");
    if (T->dims() != typename Tensor3<S>::Index{s.n, s.n, s.n}) throw Error("BadDims", "so3 tensor must be n x n x n", "T");
  }
  if (c == Category::sl2 && T) throw Error("BadDims", "sl2 data carries no trilinear form", "T");
  s.T = std::move(T);
  return s;
}

template <class S>
std::size_t strand_dim(const FiberSpec<S>& s, Label l) {
  return is_usual(l) ? s.n : 1;
}

template <class S>
std::size_t word_dim(const FiberSpec<S>& s, const Word& w) {
  std::size_t d = 1;
  for (Label l : w) d *= strand_dim(s, l);
  return d;
}

/// q-integer [k] evaluated from v.
template <class S>
S quantum_value(int k, const S& v) {
  if constexpr (std::is_same_v<S, FieldElement>) {
    (void)v;
    return quantum_integer(k);
  } else {
    using T = scalar_traits<S>;
    const S q = v * v, qi = T::inv(q);
    S acc = T::zero();
    const int m = k < 0 ? -k : k;
    for (int i = 0; i < m; ++i) {
      S term = T::one();
      const int e = m - 1 - 2 * i;
      for (int j = 0; j < (e < 0 ? -e : e); ++j) term *= (e < 0 ? qi : q);
      acc += term;
    }
    return k < 0 ? -acc : acc;
  }
}

/// Value of the closed circle required by the category.
template <class S>
S circle_target(Category c, const S& v);

template <>
inline FieldElement circle_target(Category c, const FieldElement&) {
  switch (c) {
    case Category::sl2: return -quantum_integer(2);
    case Category::gl2: return quantum_integer(2);
    case Category::so3: return quantum_integer(3);
  }
  return {};
}

template <class S>
S circle_target(Category c, const S& v) {
  const S q = v * v, qi = scalar_traits<S>::inv(q);
  switch (c) {
    case Category::sl2: return -(q + qi);
    case Category::gl2: return q + qi;
    case Category::so3: return q * q + scalar_traits<S>::one() + qi * qi;
  }
  return scalar_traits<S>::zero();
}

/// tr(M^T M^-1) = sum m_ij n_ij.
template <class S>
S trace_statistic(const Matrix<S>& M, const Matrix<S>& Minv) {
  S t = scalar_traits<S>::zero();
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) t += M(i, j) * Minv(i, j);
  return t;
}

namespace detail {

template <class S>
LinearMap<S> cap_row(const Matrix<S>& A) {
  const std::size_t n = A.rows();
  LinearMap<S> m(1, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(0, i * n + j, A(i, j));
  return m;
}

template <class S>
LinearMap<S> cup_col(const Matrix<S>& A) {
  const std::size_t n = A.rows();
  LinearMap<S> m(n * n, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i * n + j, 0, A(i, j));
  return m;
}

template <class S>
LinearMap<S> tensor_row(const Tensor3<S>& t) {
  const auto& d = t.dims();
  LinearMap<S> m(1, d[0] * d[1] * d[2]);
  for (const auto& [idx, x] : t.entries()) m.set(0, (idx[0] * d[1] + idx[1]) * d[2] + idx[2], x);
  return m;
}

template <class S>
LinearMap<S> tensor_col(const Tensor3<S>& t) {
  return tensor_row(t).transpose();
}

}  // namespace detail

/// Coform partner of T: the image of the downward trivalent vertex.
///   so3: U_def = sum t_abc n_af n_be n_cd (rotation by the pivotal structure).
///   gl2: U = (T N)^-T N with T read as the n x n matrix t_i0k; this is the
///        unique partner with T^l T_l = id.
template <class S>
Tensor3<S> coform(const FiberSpec<S>& s) {
  if (!s.T) throw Error("BadDims", "spec has no trilinear form", "T");
  const Tensor3<S>& t = *s.T;
  const Matrix<S>& N = s.Minv;
  const std::size_t n = s.n;
  if (s.category == Category::gl2) {
    Matrix<S> That(n, n);
    for (const auto& [idx, x] : t.entries()) That(idx[0], idx[2]) = x;
    Matrix<S> U = (That * N).transpose().inverse(s.eps) * N;
    Tensor3<S> u(n, 1, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) u.set(i, 0, k, U(i, k));
    return u;
  }
  // contract one slot at a time: W1_{bcf} = sum_a t_abc n_af, ...
  std::map<std::array<std::size_t, 3>, S> w1, w2;
  for (const auto& [idx, x] : t.entries())
    for (std::size_t f = 0; f < n; ++f)
      if (!scalar_traits<S>::is_zero(N(idx[0], f), 0)) w1[{idx[1], idx[2], f}] += x * N(idx[0], f);
  for (const auto& [idx, x] : w1)
    for (std::size_t e = 0; e < n; ++e)
      if (!scalar_traits<S>::is_zero(N(idx[0], e), 0)) w2[{idx[1], e, idx[2]}] += x * N(idx[0], e);
  Tensor3<S> u(n, n, n);
  std::map<std::array<std::size_t, 3>, S> acc;
  for (const auto& [idx, x] : w2)
    for (std::size_t d = 0; d < n; ++d)
      if (!scalar_traits<S>::is_zero(N(idx[0], d), 0)) acc[{d, idx[1], idx[2]}] += x * N(idx[0], d);
  for (const auto& [idx, x] : acc) u.set(idx[0], idx[1], idx[2], x);
  return u;
}

/// Bent maps T_l = (tup ⊗ id)∘(id ⊗ id ⊗ cup) and T^l = (id ⊗ id ⊗ cap)∘(tdown ⊗ id).
/// so3: T_l: X X -> X, T^l: X -> X X. gl2: T_l: X Q -> Y, T^l: Y -> X Q.
/// Maps are built from the stored tensors; the per-pair vertex scale is not applied.
template <class S>
std::pair<LinearMap<S>, LinearMap<S>> bent_maps(const FiberSpec<S>& s) {
  if (!s.T) throw Error("BadDims", "spec has no trilinear form", "T");
  const std::size_t n = s.n;
  const Tensor3<S>& t = *s.T;
  const Tensor3<S> u = coform(s);
  const std::size_t mid = t.dims()[1];
  LinearMap<S> Tl(n, n * mid), Tu(n * mid, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < mid; ++b)
      for (std::size_t x = 0; x < n; ++x) {
        S lo = scalar_traits<S>::zero(), up = scalar_traits<S>::zero();
        for (std::size_t c = 0; c < n; ++c) {
          lo += t.at(a, b, c) * s.Minv(c, x);
          up += u.at(a, b, c) * s.M(c, x);
        }
        Tl.set(x, a * mid + b, lo);
        Tu.set(a * mid + b, x, up);
      }
  return {Tl, Tu};
}

/// Image of a generator. For mixed_cross pass the two-letter domain.
template <class S>
LinearMap<S> generator_image(const FiberSpec<S>& s, Gen g, const Word& local = {}) {
  using T = scalar_traits<S>;
  const std::size_t n = s.n;
  const S one = T::one();
  if (!generator_in_category(s.category, g)) {
    throw Error("TypeMismatch", gen_name(g) + " is not a generator of " + category_name(s.category));
  }
  switch (g) {
    case Gen::cap:
    case Gen::cap_p: return detail::cap_row(s.M);
    case Gen::cup:
    case Gen::cup_p: return detail::cup_col(s.Minv);
    case Gen::pcap:
    case Gen::pcup:
    case Gen::pcap_p:
    case Gen::pcup_p: return LinearMap<S>::scalar(T::from_int(s.P));
    case Gen::tup: return detail::tensor_row(*s.T);
    case Gen::tdown: return detail::tensor_col(coform(s));
    case Gen::mixed_cross: {
      std::size_t d = 1;
      for (Label l : local) d *= strand_dim(s, l);
      return LinearMap<S>::identity(d);
    }
    case Gen::cross_pos:
    case Gen::cross_neg: break;
  }
  const bool pos = g == Gen::cross_pos;
  const LinearMap<S> id = LinearMap<S>::identity(n * n);
  const S v = s.v, vi = T::inv(s.v);
  if (s.category == Category::sl2) {
    LinearMap<S> cc = detail::cup_col(s.Minv) * detail::cap_row(s.M);
    return pos ? (v * id) + (vi * cc) : (vi * id) + (v * cc);
  }
  if (s.category == Category::gl2) {
    // E = |tdown><tup| on X X; the minus sign makes the two crossings inverse.
    LinearMap<S> E = detail::tensor_col(coform(s)) * detail::tensor_row(*s.T);
    return pos ? (v * id) - (vi * E) : (vi * id) - (v * E);
  }
  const S q = v * v, qi = T::inv(q);
  const S q2 = q * q, qi2 = qi * qi;
  if (T::is_zero(q2 + qi2, s.eps)) throw Error("UndefinedAtQ", "so3 crossings need q^2 + q^-2 != 0", "q");
  auto [Tl, Tu] = bent_maps(s);
  const LinearMap<S> idn = LinearMap<S>::identity(n);
  LinearMap<S> H = kron(idn, Tl) * kron(Tu, idn);
  LinearMap<S> cc = detail::cup_col(s.Minv) * detail::cap_row(s.M);
  const S h = (q2 + qi2) * s.vertex_pair_scale;
  if (pos) return ((q2 - one) * id) + (qi2 * cc) + (h * H);
  return ((qi2 - one) * id) + (q2 * cc) + (h * H);
}

template <class S>
struct Evaluation {
  LinearMap<S> map;
  int vertices = 0;
  /// True when an odd number of trivalent vertices leaves one factor of
  /// sqrt(vertex_pair_scale) unapplied.
  bool missing_half_scale = false;
};

inline constexpr std::size_t kDefaultDimensionCap = 1000000;

template <class S>
Evaluation<S> evaluate(const FiberSpec<S>& s, const LayeredDiagram& d,
                       std::size_t dimension_cap = kDefaultDimensionCap) {
  if (d.category != s.category) throw Error("TypeMismatch", "diagram and spec categories differ", "category");
  validate(d);
  // words after each layer, and the local images
  std::vector<Word> words{d.domain};
  std::map<std::pair<Gen, Word>, LinearMap<S>> cache;
  std::vector<const LinearMap<S>*> images;
  std::vector<std::size_t> rights;
  int vertices = 0;
  for (std::size_t i = 0; i < d.layers.size(); ++i) {
    const Layer& layer = d.layers[i];
    const Word& w = words.back();
    auto t = resolve_template(d.category, layer.gen, w, layer.offset);
    Word key = layer.gen == Gen::mixed_cross ? t->domain : Word{};
    auto it = cache.find({layer.gen, key});
    if (it == cache.end()) it = cache.emplace(std::make_pair(layer.gen, key), generator_image(s, layer.gen, key)).first;
    images.push_back(&it->second);
    std::size_t right = 1;
    for (std::size_t j = layer.offset + t->domain.size(); j < w.size(); ++j) right *= strand_dim(s, w[j]);
    rights.push_back(right);
    if (layer.gen == Gen::tup || layer.gen == Gen::tdown) ++vertices;
    words.push_back(apply_layer(d.category, w, layer, i));
    if (word_dim(s, words.back()) > dimension_cap) {
      throw Error("DimensionCap", "intermediate space exceeds the dimension cap", "layers[" + std::to_string(i) + "]");
    }
  }
  const std::size_t din = word_dim(s, d.domain), dout = word_dim(s, d.codomain);
  Evaluation<S> ev;
  ev.map = LinearMap<S>(dout, din);
  for (std::size_t j = 0; j < din; ++j) {
    SparseVec<S> x;
    x.emplace(j, scalar_traits<S>::one());
    for (std::size_t i = 0; i < images.size() && !x.empty(); ++i) x = apply_local(*images[i], rights[i], x);
    for (const auto& [r, val] : x) ev.map.set(r, j, val);
  }
  ev.vertices = vertices;
  if (vertices >= 2 && !(s.vertex_pair_scale == scalar_traits<S>::one())) {
    S f = scalar_traits<S>::one();
    for (int k = 0; k < vertices / 2; ++k) f *= s.vertex_pair_scale;
    ev.map = f * ev.map;
  }
  ev.missing_half_scale = (vertices % 2 == 1) && !(s.vertex_pair_scale == scalar_traits<S>::one());
  return ev;
}

// ------------------------------------------------------------ conditions

template <class S>
struct TraceReport {
  bool pass = false;
  S value;
  S target;
};

template <class S>
TraceReport<S> check_trace_condition(const FiberSpec<S>& s) {
  TraceReport<S> r;
  r.value = trace_statistic(s.M, s.Minv);
  r.target = circle_target<S>(s.category, s.v);
  r.pass = scalar_traits<S>::is_zero(r.value - r.target, s.eps);
  return r;
}

struct RelationResult {
  std::string name;
  bool pass = false;
  double max_abs_residual = 0.0;
};

namespace detail {

inline LayeredDiagram diag(Category c, Word domain, std::vector<Layer> layers) {
  return make_diagram(c, std::move(domain), std::move(layers));
}

template <class S>
RelationResult compare(const std::string& name, const FiberSpec<S>& s, const LinearMap<S>& lhs,
                       const LinearMap<S>& rhs) {
  LinearMap<S> diff = lhs - rhs;
  return {name, diff.is_zero(s.eps), diff.max_abs()};
}

template <class S>
RelationResult compare(const std::string& name, const FiberSpec<S>& s, const LayeredDiagram& lhs,
                       const LinearMap<S>& rhs) {
  return compare(name, s, evaluate(s, lhs).map, rhs);
}

template <class S>
RelationResult compare(const std::string& name, const FiberSpec<S>& s, const LayeredDiagram& lhs,
                       const LayeredDiagram& rhs) {
  return compare(name, s, evaluate(s, lhs).map, evaluate(s, rhs).map);
}

}  // namespace detail

/// Closed diagrams used by the relation checks and the CLI.
inline LayeredDiagram circle_diagram(Category c) {
  if (c == Category::gl2) return detail::diag(c, {}, {{0, Gen::cup_p}, {0, Gen::cap}});
  return detail::diag(c, {}, {{0, Gen::cup}, {0, Gen::cap}});
}
inline LayeredDiagram theta_diagram(Category c) { return detail::diag(c, {}, {{0, Gen::tdown}, {0, Gen::tup}}); }
/// so3 monogon: tup with its first two legs closed by a cup, third leg free.
inline LayeredDiagram monogon_diagram() {
  return detail::diag(Category::so3, {Label::X}, {{0, Gen::cup}, {0, Gen::tup}});
}

/// Evaluates both sides of every defining relation of the category.
template <class S>
std::vector<RelationResult> check_all_relations(const FiberSpec<S>& s) {
  using T = scalar_traits<S>;
  using L = Label;
  const Category c = s.category;
  std::vector<RelationResult> out;
  const std::size_t n = s.n;
  const LinearMap<S> idn = LinearMap<S>::identity(n);
  const LinearMap<S> one = LinearMap<S>::scalar(T::one());
  const LinearMap<S> zero_fn(1, n);
  auto D = [c](Word w, std::vector<Layer> layers) { return detail::diag(c, std::move(w), std::move(layers)); };
  const S target = circle_target<S>(c, s.v);
  const LinearMap<S> circle_value = LinearMap<S>::scalar(target);

  if (c == Category::sl2 || c == Category::so3) {
    out.push_back(detail::compare("zigzag_left", s, D({L::X}, {{1, Gen::cup}, {0, Gen::cap}}), idn));
    out.push_back(detail::compare("zigzag_right", s, D({L::X}, {{0, Gen::cup}, {1, Gen::cap}}), idn));
    out.push_back(detail::compare("circle", s, circle_diagram(c), circle_value));
  }
  if (c == Category::so3) {
    out.push_back(detail::compare("monogon_left", s, D({L::X}, {{0, Gen::cup}, {0, Gen::tup}}), zero_fn));
    out.push_back(detail::compare("monogon_right", s, D({L::X}, {{1, Gen::cup}, {0, Gen::tup}}), zero_fn));
    const LinearMap<S> zero_vec(n, 1);
    out.push_back(detail::compare("comonogon_left", s, D({}, {{0, Gen::tdown}, {0, Gen::cap}}), zero_vec));
    out.push_back(detail::compare("comonogon_right", s, D({}, {{0, Gen::tdown}, {1, Gen::cap}}), zero_vec));
    out.push_back(detail::compare("vertex_rotation", s, D({L::X, L::X, L::X}, {{0, Gen::cup}, {1, Gen::tup}, {0, Gen::cap}}),
                                  D({L::X, L::X, L::X}, {{0, Gen::tup}})));
    // H = I + c (id - cup∘cap), c = 1/(q^2 + q^-2)
    const S q = s.v * s.v, qi = T::inv(q);
    const S sum = q * q + qi * qi;
    if (T::is_zero(sum, s.eps)) throw Error("UndefinedAtQ", "so3 relations need q^2 + q^-2 != 0", "q");
    const S coef = T::inv(sum);
    LinearMap<S> H = evaluate(s, D({L::X, L::X}, {{0, Gen::tdown}, {2, Gen::cap}, {3, Gen::cup}, {1, Gen::tup}})).map;
    LinearMap<S> I = evaluate(s, D({L::X, L::X}, {{2, Gen::cup}, {0, Gen::tup}, {0, Gen::tdown}, {2, Gen::cap}})).map;
    LinearMap<S> cc = evaluate(s, D({L::X, L::X}, {{0, Gen::cap}, {0, Gen::cup}})).map;
    out.push_back(detail::compare("H=I", s, H, I + coef * (LinearMap<S>::identity(n * n) - cc)));
    out.push_back(detail::compare("theta", s, theta_diagram(c), LinearMap<S>::scalar(-quantum_value<S>(3, s.v))));
  }
  if (c == Category::gl2) {
    const LinearMap<S> id1 = LinearMap<S>::identity(1);
    out.push_back(detail::compare("zigzag_x", s, D({L::X}, {{1, Gen::cup}, {0, Gen::cap}}), idn));
    out.push_back(detail::compare("zigzag_y", s, D({L::Y}, {{0, Gen::cup}, {1, Gen::cap}}), idn));
    out.push_back(detail::compare("zigzag_y_primed", s, D({L::Y}, {{1, Gen::cup_p}, {0, Gen::cap_p}}), idn));
    out.push_back(detail::compare("zigzag_x_primed", s, D({L::X}, {{0, Gen::cup_p}, {1, Gen::cap_p}}), idn));
    out.push_back(detail::compare("phantom_zigzag_p", s, D({L::P}, {{1, Gen::pcup}, {0, Gen::pcap}}), id1));
    out.push_back(detail::compare("phantom_zigzag_q", s, D({L::Q}, {{0, Gen::pcup}, {1, Gen::pcap}}), id1));
    out.push_back(detail::compare("phantom_zigzag_p_primed", s, D({L::P}, {{0, Gen::pcup_p}, {1, Gen::pcap_p}}), id1));
    out.push_back(detail::compare("phantom_zigzag_q_primed", s, D({L::Q}, {{1, Gen::pcup_p}, {0, Gen::pcap_p}}), id1));
    out.push_back(detail::compare("circle", s, D({}, {{0, Gen::cup_p}, {0, Gen::cap}}), circle_value));
    out.push_back(detail::compare("circle_reversed", s, D({}, {{0, Gen::cup}, {0, Gen::cap_p}}), circle_value));
    out.push_back(detail::compare("phantom_circle", s, D({}, {{0, Gen::pcup_p}, {0, Gen::pcap}}), one));
    out.push_back(detail::compare("phantom_circle_reversed", s, D({}, {{0, Gen::pcup}, {0, Gen::pcap_p}}), one));
    out.push_back(detail::compare("trilinear_evaluation", s, theta_diagram(c), circle_value));
    // T_l: X Q -> Y and T^l: Y -> X Q
    const std::vector<Layer> lower{{2, Gen::cup_p}, {0, Gen::tup}};
    const std::vector<Layer> upper{{0, Gen::tdown}, {2, Gen::cap}};
    std::vector<Layer> snake1 = lower;
    snake1.insert(snake1.end(), upper.begin(), upper.end());
    std::vector<Layer> snake2 = upper;
    snake2.insert(snake2.end(), lower.begin(), lower.end());
    out.push_back(detail::compare("H=I_xq", s, D({L::X, L::Q}, snake1), idn));
    out.push_back(detail::compare("H=I_y", s, D({L::Y}, snake2), idn));
    out.push_back(detail::compare("vertical=horizontal_pq", s, D({L::P, L::Q}, {{0, Gen::pcap}, {0, Gen::pcup_p}}), id1));
    out.push_back(detail::compare("vertical=horizontal_qp", s, D({L::Q, L::P}, {{0, Gen::pcap_p}, {0, Gen::pcup}}), id1));
  }
  return out;
}

inline bool all_pass(const std::vector<RelationResult>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return false;
  return true;
}

/// Image of the positive crossing (n^2 x n^2).
template <class S>
LinearMap<S> crossing_matrix(const FiberSpec<S>& s) {
  return generator_image(s, Gen::cross_pos);
}

template <class S>
LinearMap<S> flip_matrix(std::size_t n) {
  LinearMap<S> f(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f.set(j * n + i, i * n + j, scalar_traits<S>::one());
  return f;
}

template <class S>
bool flip_test(const FiberSpec<S>& s) {
  return approx_equal(crossing_matrix(s), flip_matrix<S>(s.n), s.eps);
}

// ------------------------------------------------------------ standard data

/// S(1) = [[0, 1], [-q, 0]].
template <class S>
Matrix<S> standard_sl2_matrix(const S& v) {
  using T = scalar_traits<S>;
  Matrix<S> m(2, 2);
  m(0, 1) = T::one();
  m(1, 0) = -(v * v);
  return m;
}

inline FiberSpec<FieldElement> sl2_standard_spec() {
  return make_spec(Category::sl2, standard_sl2_matrix(FieldElement::v()), FieldElement::v());
}

template <class S>
FiberSpec<S> sl2_standard_spec_at(const S& v, double eps = kDefaultEps) {
  return make_spec(Category::sl2, standard_sl2_matrix(v), v, std::nullopt, 1, eps);
}

/// gl2 triple (M, +1, T) with t_i0k = m_ik.
template <class S>
FiberSpec<S> gl2_standard_triple(const Matrix<S>& M, const S& v, double eps = kDefaultEps) {
  Matrix<S> Minv = M.inverse(eps);
  if (!scalar_traits<S>::is_zero(trace_statistic(M, Minv) - circle_target<S>(Category::gl2, v), eps)) {
    throw Error("TraceConditionFailed", "gl2 triples need tr(M^T M^-1) = [2]", "M");
  }
  Tensor3<S> t(M.rows(), 1, M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t k = 0; k < M.rows(); ++k) t.set(i, 0, k, M(i, k));
  return make_spec(Category::gl2, M, v, std::optional<Tensor3<S>>(t), 1, eps);
}

/// The gl2 bilinear solution H_2(q) = [[0, 1], [q, 0]].
template <class S>
Matrix<S> standard_gl2_matrix(const S& v) {
  Matrix<S> m(2, 2);
  m(0, 1) = scalar_traits<S>::one();
  m(1, 0) = v * v;
  return m;
}

namespace detail {

// Data on Sym^2 C^2 with basis v1v1, v1v2, v2v2: the bilinear form obtained
// by exploding the 2-labelled cap (divided by [2]) and the trilinear form of
// three 1-labelled caps, without its 1/s prefactor.
template <class S>
std::pair<Matrix<S>, Tensor3<S>> sym2_data(const S& v) {
  using T = scalar_traits<S>;
  const S q = v * v, qi = T::inv(q), two = q + qi;
  // 1-labelled cap: v1⊗v2 -> -q, v2⊗v1 -> 1
  auto c1 = [&](int i, int j) -> S {
    if (i == 0 && j == 1) return -q;
    if (i == 1 && j == 0) return T::one();
    return T::zero();
  };
  struct Term {
    int i, j;
    S coef;
  };
  std::vector<std::vector<Term>> split{{{0, 0, two}}, {{0, 1, qi}, {1, 0, T::one()}}, {{1, 1, two}}};
  Matrix<S> M(3, 3);
  const S inv_two = T::inv(two);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      S acc = T::zero();
      for (const auto& x : split[a])
        for (const auto& y : split[b]) acc += x.coef * y.coef * c1(x.j, y.i) * c1(x.i, y.j);
      M(a, b) = acc * inv_two;
    }
  Tensor3<S> t(3, 3, 3);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t c = 0; c < 3; ++c) {
        S acc = T::zero();
        for (const auto& x : split[a])
          for (const auto& y : split[b])
            for (const auto& z : split[c]) acc += x.coef * y.coef * z.coef * c1(x.j, y.i) * c1(y.j, z.i) * c1(x.i, z.j);
        t.set(a, b, c, acc);
      }
  return {M, t};
}

}  // namespace detail

/// so3 standard pair in exact form: the tensor is stored as s*T3 and every
/// pair of trivalent vertices carries 1/s^2, s^2 = (q^2 + q^-2)[2]^2.
inline FiberSpec<FieldElement> sym2_standard_pair() {
  const FieldElement v = FieldElement::v();
  auto [M, t] = detail::sym2_data(v);
  FiberSpec<FieldElement> s = make_spec(Category::so3, M, v, std::optional<Tensor3<FieldElement>>(t));
  const FieldElement q2 = FieldElement::q_pow(2) + FieldElement::q_pow(-2);
  const FieldElement two = quantum_integer(2);
  s.vertex_pair_scale = (q2 * two * two).inverse();
  return s;
}

/// so3 standard pair at a numeric v with the principal square root s.
inline FiberSpec<Complex> sym2_standard_pair_at(Complex v, double eps = kDefaultEps) {
  const Complex q = v * v;
  const Complex q2 = q * q + 1.0 / (q * q);
  const Complex two = q + 1.0 / q;
  if (std::abs(q2) <= eps || std::abs(two) <= eps) {
    throw Error("UndefinedAtQ", "the so3 standard pair needs q^2 + q^-2 != 0 and [2] != 0", "q");
  }
  auto [M, t] = detail::sym2_data(v);
  const Complex s = std::sqrt(q2 * two * two);
  Tensor3<Complex> scaled = t.map_entries([&](const Complex& x) { return x / s; });
  return make_spec(Category::so3, M, v, std::optional<Tensor3<Complex>>(scaled), 1, eps);
}

/// Numeric specialization of an exact spec at v = v0. A vertex-pair scale
/// is absorbed into the tensor by its principal square root.
inline FiberSpec<Complex> specialize_spec(const FiberSpec<FieldElement>& s, Complex v0, double eps = kDefaultEps) {
  auto sp = [&](const FieldElement& x) { return specialize(x, v0, eps); };
  std::optional<Tensor3<Complex>> t;
  if (s.T) {
    const Complex root = std::sqrt(sp(s.vertex_pair_scale));
    t = s.T->map_entries([&](const FieldElement& x) { return sp(x) * root; });
  }
  return make_spec(s.category, s.M.map(sp), v0, t, s.P, eps);
}

/// Exact specialization at a rational v = v0, keeping the vertex-pair scale.
inline FiberSpec<Rational> specialize_spec(const FiberSpec<FieldElement>& s, const Rational& v0) {
  auto sp = [&](const FieldElement& x) { return x.evaluate(v0); };
  std::optional<Tensor3<Rational>> t;
  if (s.T) t = s.T->map_entries(sp);
  FiberSpec<Rational> r = make_spec(s.category, s.M.map(sp), v0, t, s.P, 0.0);
  r.vertex_pair_scale = sp(s.vertex_pair_scale);
  return r;
}

// ------------------------------------------------------------ faithfulness

/// Basis diagrams of Hom(X^k, X^l) (gl2: words of X).
inline std::vector<LayeredDiagram> basis_diagrams(Category c, int k, int l) {
  std::vector<LayeredDiagram> out;
  if (c == Category::sl2) {
    for (const auto& m : enumerate_matchings(k, l)) out.push_back(matching_to_diagram(m, c));
  } else if (c == Category::so3) {
    for (const auto& p : enumerate_planar_partitions(k, l)) out.push_back(partition_to_diagram(p));
  } else {
    out = gl2_basis(Word(static_cast<std::size_t>(k), Label::X), Word(static_cast<std::size_t>(l), Label::X));
  }
  return out;
}

template <class S>
std::size_t image_rank(const FiberSpec<S>& s, const std::vector<LayeredDiagram>& basis,
                       std::size_t dimension_cap = kDefaultDimensionCap) {
  if (basis.empty()) return 0;
  std::vector<LinearMap<S>> images;
  for (const auto& d : basis) images.push_back(evaluate(s, d, dimension_cap).map);
  const std::size_t len = images.front().rows() * images.front().cols();
  if (len * images.size() > dimension_cap) throw Error("DimensionCap", "flattened basis images exceed the dimension cap");
  Matrix<S> A(images.size(), len);
  for (std::size_t r = 0; r < images.size(); ++r)
    for (const auto& [i, j, x] : images[r].entries()) A(r, i * images[r].cols() + j) = x;
  return A.rank(s.eps);
}

/// True iff the images of the basis of Hom(k, l) are linearly independent.
/// Exact specs are decided by exact rank at rational sample points, which
/// can only under-estimate the generic rank; full rank there is a proof,
/// and a deficient sample falls back to elimination over Q(v).
template <class S>
bool faithfulness_check(const FiberSpec<S>& s, int k, int l, std::size_t dimension_cap = kDefaultDimensionCap) {
  const auto basis = basis_diagrams(s.category, k, l);
  if constexpr (std::is_same_v<S, FieldElement>) {
    for (const Rational v0 : {Rational(7, 5), Rational(-11, 3), Rational(13, 17)}) {
      try {
        if (image_rank(specialize_spec(s, v0), basis, dimension_cap) == basis.size()) return true;
      } catch (const Error& e) {
        if (e.code() != "PoleError" && e.code() != "SingularMatrix") throw;
      }
    }
  }
  return image_rank(s, basis, dimension_cap) == basis.size();
}

}  // namespace webcat
