#pragma once

// Web diagrams as layered words: a domain word and a bottom-to-top stack of
// generator layers. Plus enumeration of the diagram bases.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "webcat/error.hpp"

namespace webcat {

enum class Category { sl2, gl2, so3 };

/// X = (usual, up), Y = (usual, down), P = (phantom, up), Q = (phantom, down).
/// sl2 and so3 use X only, read as the unoriented usual strand.
enum class Label { X, Y, P, Q };

enum class StrandKind { usual, phantom };
enum class Orientation { up, down, none };

struct StrandLabel {
  StrandKind kind;
  Orientation orientation;
};

using Word = std::vector<Label>;

inline StrandLabel strand_label(Category c, Label l) {
  if (c != Category::gl2) return {StrandKind::usual, Orientation::none};
  switch (l) {
    case Label::X: return {StrandKind::usual, Orientation::up};
    case Label::Y: return {StrandKind::usual, Orientation::down};
    case Label::P: return {StrandKind::phantom, Orientation::up};
    case Label::Q: return {StrandKind::phantom, Orientation::down};
  }
  return {StrandKind::usual, Orientation::none};
}

inline bool is_usual(Label l) { return l == Label::X || l == Label::Y; }
inline bool is_phantom(Label l) { return l == Label::P || l == Label::Q; }

inline Label dual(Label l) {
  switch (l) {
    case Label::X: return Label::Y;
    case Label::Y: return Label::X;
    case Label::P: return Label::Q;
    case Label::Q: return Label::P;
  }
  return l;
}

/// Flow grading: every generator preserves the sum.
inline int grade(Label l) {
  switch (l) {
    case Label::X: return 1;
    case Label::Y: return -1;
    case Label::P: return 2;
    case Label::Q: return -2;
  }
  return 0;
}

inline bool label_legal(Category c, Label l) { return c == Category::gl2 || l == Label::X; }

inline std::string label_name(Label l) {
  switch (l) {
    case Label::X: return "x";
    case Label::Y: return "y";
    case Label::P: return "p";
    case Label::Q: return "q";
  }
  return "?";
}

inline Label parse_label(const std::string& s) {
  if (s == "x" || s == "X") return Label::X;
  if (s == "y" || s == "Y") return Label::Y;
  if (s == "p" || s == "P") return Label::P;
  if (s == "q" || s == "Q") return Label::Q;
  throw Error("ParseError", "unknown strand label '" + s + "'");
}

inline std::string category_name(Category c) {
  switch (c) {
    case Category::sl2: return "sl2";
    case Category::gl2: return "gl2";
    case Category::so3: return "so3";
  }
  return "?";
}

inline Category parse_category(const std::string& s) {
  if (s == "sl2") return Category::sl2;
  if (s == "gl2") return Category::gl2;
  if (s == "so3") return Category::so3;
  throw Error("ParseError", "unknown category '" + s + "'");
}

enum class Gen {
  cap,
  cup,
  cap_p,
  cup_p,
  pcap,
  pcup,
  pcap_p,
  pcup_p,
  tup,
  tdown,
  cross_pos,
  cross_neg,
  mixed_cross,
};

inline std::string gen_name(Gen g) {
  switch (g) {
    case Gen::cap: return "cap";
    case Gen::cup: return "cup";
    case Gen::cap_p: return "cap'";
    case Gen::cup_p: return "cup'";
    case Gen::pcap: return "pcap";
    case Gen::pcup: return "pcup";
    case Gen::pcap_p: return "pcap'";
    case Gen::pcup_p: return "pcup'";
    case Gen::tup: return "tup";
    case Gen::tdown: return "tdown";
    case Gen::cross_pos: return "cross_pos";
    case Gen::cross_neg: return "cross_neg";
    case Gen::mixed_cross: return "mixed_cross";
  }
  return "?";
}

inline Gen parse_gen(const std::string& s) {
  static const std::pair<const char*, Gen> table[] = {
      {"cap", Gen::cap},       {"cup", Gen::cup},           {"cap'", Gen::cap_p},
      {"cup'", Gen::cup_p},    {"pcap", Gen::pcap},         {"pcup", Gen::pcup},
      {"pcap'", Gen::pcap_p},  {"pcup'", Gen::pcup_p},      {"tup", Gen::tup},
      {"tdown", Gen::tdown},   {"cross_pos", Gen::cross_pos}, {"cross_neg", Gen::cross_neg},
      {"mixed_cross", Gen::mixed_cross},
  };
  for (const auto& [name, g] : table)
    if (s == name) return g;
  throw Error("ParseError", "unknown generator '" + s + "'");
}

inline bool generator_in_category(Category c, Gen g) {
  switch (c) {
    case Category::sl2:
      return g == Gen::cap || g == Gen::cup || g == Gen::cross_pos || g == Gen::cross_neg;
    case Category::so3:
      return g == Gen::cap || g == Gen::cup || g == Gen::tup || g == Gen::tdown || g == Gen::cross_pos ||
             g == Gen::cross_neg;
    case Category::gl2:
      return true;
  }
  return false;
}

/// Domain and codomain templates. mixed_cross is the one family generator:
/// its template is resolved against the word it is applied to.
struct Template {
  Word domain;
  Word codomain;
};

inline Template generator_template(Category c, Gen g) {
  using L = Label;
  const L X = L::X, Y = L::Y, P = L::P, Q = L::Q;
  if (c != Category::gl2) {
    switch (g) {
      case Gen::cap: return {{X, X}, {}};
      case Gen::cup: return {{}, {X, X}};
      case Gen::tup: return {{X, X, X}, {}};
      case Gen::tdown: return {{}, {X, X, X}};
      case Gen::cross_pos:
      case Gen::cross_neg: return {{X, X}, {X, X}};
      default: break;
    }
    throw Error("TypeMismatch", "generator " + gen_name(g) + " is not in " + category_name(c));
  }
  switch (g) {
    case Gen::cap: return {{X, Y}, {}};
    case Gen::cup: return {{}, {Y, X}};
    case Gen::cap_p: return {{Y, X}, {}};
    case Gen::cup_p: return {{}, {X, Y}};
    case Gen::pcap: return {{P, Q}, {}};
    case Gen::pcup: return {{}, {Q, P}};
    case Gen::pcap_p: return {{Q, P}, {}};
    case Gen::pcup_p: return {{}, {P, Q}};
    case Gen::tup: return {{X, Q, X}, {}};
    case Gen::tdown: return {{}, {X, Q, X}};
    case Gen::cross_pos:
    case Gen::cross_neg: return {{X, X}, {X, X}};
    case Gen::mixed_cross: break;
  }
  throw Error("TypeMismatch", "mixed_cross has no fixed template");
}

/// Template of g when applied at `offset` of `word`, or nullopt if it does
/// not type-check there.
inline std::optional<Template> resolve_template(Category c, Gen g, const Word& word, std::size_t offset) {
  if (!generator_in_category(c, g)) return std::nullopt;
  if (g == Gen::mixed_cross) {
    if (offset + 2 > word.size()) return std::nullopt;
    Label a = word[offset], b = word[offset + 1];
    if (is_usual(a) == is_usual(b)) return std::nullopt;
    return Template{{a, b}, {b, a}};
  }
  Template t = generator_template(c, g);
  if (offset + t.domain.size() > word.size()) return std::nullopt;
  if (!std::equal(t.domain.begin(), t.domain.end(), word.begin() + static_cast<std::ptrdiff_t>(offset))) {
    return std::nullopt;
  }
  return t;
}

struct Layer {
  std::size_t offset = 0;
  Gen gen = Gen::cap;
  friend bool operator==(const Layer& a, const Layer& b) { return a.offset == b.offset && a.gen == b.gen; }
};

struct LayeredDiagram {
  Category category = Category::sl2;
  Word domain;
  Word codomain;
  std::vector<Layer> layers;

  friend bool operator==(const LayeredDiagram& a, const LayeredDiagram& b) {
    return a.category == b.category && a.domain == b.domain && a.codomain == b.codomain && a.layers == b.layers;
  }
};

/// Word after `layer` is applied to `word`; throws TypeMismatch.
inline Word apply_layer(Category c, const Word& word, const Layer& layer, std::size_t index) {
  auto t = resolve_template(c, layer.gen, word, layer.offset);
  if (!t) {
    throw Error("TypeMismatch",
                "layer " + std::to_string(index) + " (" + gen_name(layer.gen) + " at offset " +
                    std::to_string(layer.offset) + ") does not match the word",
                "layers[" + std::to_string(index) + "]");
  }
  Word out(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(layer.offset));
  out.insert(out.end(), t->codomain.begin(), t->codomain.end());
  out.insert(out.end(), word.begin() + static_cast<std::ptrdiff_t>(layer.offset + t->domain.size()), word.end());
  return out;
}

/// Computed codomain; throws TypeMismatch naming the first ill-typed layer,
/// or "codomain" if the final word differs from the declared one.
inline Word codomain_of(Category c, const Word& domain, const std::vector<Layer>& layers) {
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (!label_legal(c, domain[i])) {
      throw Error("TypeMismatch", "label " + label_name(domain[i]) + " is not legal in " + category_name(c),
                  "domain[" + std::to_string(i) + "]");
    }
  }
  Word w = domain;
  for (std::size_t i = 0; i < layers.size(); ++i) w = apply_layer(c, w, layers[i], i);
  return w;
}

inline Word validate(const LayeredDiagram& d) {
  Word w = codomain_of(d.category, d.domain, d.layers);
  if (w != d.codomain) throw Error("TypeMismatch", "final word differs from the declared codomain", "codomain");
  return w;
}

/// Builds a diagram whose codomain is computed from its layers.
inline LayeredDiagram make_diagram(Category c, Word domain, std::vector<Layer> layers) {
  LayeredDiagram d{c, std::move(domain), {}, std::move(layers)};
  d.codomain = codomain_of(d.category, d.domain, d.layers);
  return d;
}

inline LayeredDiagram identity_diagram(Category c, Word w) { return make_diagram(c, std::move(w), {}); }

/// top ∘ bottom
inline LayeredDiagram compose(const LayeredDiagram& top, const LayeredDiagram& bottom) {
  if (top.category != bottom.category) throw Error("TypeMismatch", "composition across categories");
  if (top.domain != bottom.codomain) throw Error("TypeMismatch", "codomain of bottom differs from domain of top");
  LayeredDiagram d{bottom.category, bottom.domain, top.codomain, bottom.layers};
  d.layers.insert(d.layers.end(), top.layers.begin(), top.layers.end());
  validate(d);
  return d;
}

/// left ⊗ right: left's layers first, then right's shifted past left's codomain.
inline LayeredDiagram tensor(const LayeredDiagram& left, const LayeredDiagram& right) {
  if (left.category != right.category) throw Error("TypeMismatch", "tensor product across categories");
  LayeredDiagram d{left.category, left.domain, left.codomain, {}};
  d.domain.insert(d.domain.end(), right.domain.begin(), right.domain.end());
  d.codomain.insert(d.codomain.end(), right.codomain.begin(), right.codomain.end());
  d.layers = left.layers;
  for (Layer l : right.layers) {
    l.offset += left.codomain.size();
    d.layers.push_back(l);
  }
  validate(d);
  return d;
}

// ------------------------------------------------------------ enumeration

/// Noncrossing perfect matching of boundary points 1..k+l (bottom
/// left-to-right, then top right-to-left), pairs sorted.
struct Matching {
  int k = 0, l = 0;
  std::vector<std::pair<int, int>> pairs;
};

/// Noncrossing partition of 1..k+l with every block of size >= 2.
struct PlanarPartition {
  int k = 0, l = 0;
  std::vector<std::vector<int>> blocks;
};

namespace detail {

// Noncrossing partitions of first..last with all block sizes in [min_block, max_block].
inline void noncrossing_partitions(int first, int last, int min_block, int max_block,
                                   std::vector<std::vector<int>>& current,
                                   const std::function<void()>& emit);

inline void partitions_of_gaps(const std::vector<std::pair<int, int>>& gaps, std::size_t idx, int min_block,
                               int max_block, std::vector<std::vector<int>>& current,
                               const std::function<void()>& emit) {
  if (idx == gaps.size()) {
    emit();
    return;
  }
  noncrossing_partitions(gaps[idx].first, gaps[idx].second, min_block, max_block, current,
                         [&] { partitions_of_gaps(gaps, idx + 1, min_block, max_block, current, emit); });
}

inline void noncrossing_partitions(int first, int last, int min_block, int max_block,
                                   std::vector<std::vector<int>>& current,
                                   const std::function<void()>& emit) {
  if (first > last) {
    emit();
    return;
  }
  // Choose the block containing `first`: first = a_1 < a_2 < ... < a_s.
  std::vector<int> block{first};
  std::function<void(int)> extend = [&](int next) {
    const int size = static_cast<int>(block.size());
    if (size >= min_block) {
      std::vector<std::pair<int, int>> gaps;
      for (std::size_t i = 0; i + 1 < block.size(); ++i) gaps.emplace_back(block[i] + 1, block[i + 1] - 1);
      gaps.emplace_back(block.back() + 1, last);
      current.push_back(block);
      partitions_of_gaps(gaps, 0, min_block, max_block, current, emit);
      current.pop_back();
    }
    if (size >= max_block) return;
    for (int a = next; a <= last; ++a) {
      block.push_back(a);
      extend(a + 1);
      block.pop_back();
    }
  };
  extend(first + 1);
}

inline std::vector<std::vector<std::vector<int>>> all_noncrossing(int m, int min_block, int max_block) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> current;
  noncrossing_partitions(1, m, min_block, max_block, current, [&] {
    auto blocks = current;
    std::sort(blocks.begin(), blocks.end());
    out.push_back(std::move(blocks));
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline std::vector<Matching> enumerate_matchings(int k, int l) {
  if (k < 0 || l < 0) throw Error("BadDims", "negative boundary size");
  std::vector<Matching> out;
  if ((k + l) % 2 != 0) return out;
  for (const auto& blocks : detail::all_noncrossing(k + l, 2, 2)) {
    Matching m{k, l, {}};
    for (const auto& b : blocks) m.pairs.emplace_back(b[0], b[1]);
    out.push_back(std::move(m));
  }
  return out;
}

inline std::vector<PlanarPartition> enumerate_planar_partitions(int k, int l) {
  if (k < 0 || l < 0) throw Error("BadDims", "negative boundary size");
  std::vector<PlanarPartition> out;
  const int m = k + l;
  for (auto& blocks : detail::all_noncrossing(m, 2, m < 2 ? 2 : m)) out.push_back({k, l, std::move(blocks)});
  return out;
}

namespace detail {

// Layers closing the first m points of X^m (plus any trailing strands) by
// the given noncrossing blocks; blocks of size >= 3 are left combs of tup.
inline std::vector<Layer> closing_layers(int m, const std::vector<std::vector<int>>& blocks) {
  std::vector<Layer> layers;
  std::vector<int> alive(static_cast<std::size_t>(m));
  std::iota(alive.begin(), alive.end(), 1);
  std::vector<bool> done(blocks.size(), false);
  for (std::size_t round = 0; round < blocks.size(); ++round) {
    bool progressed = false;
    for (std::size_t b = 0; b < blocks.size() && !progressed; ++b) {
      if (done[b]) continue;
      const auto& blk = blocks[b];
      auto it = std::find(alive.begin(), alive.end(), blk.front());
      const std::size_t o = static_cast<std::size_t>(it - alive.begin());
      bool contiguous = o + blk.size() <= alive.size();
      for (std::size_t i = 0; contiguous && i < blk.size(); ++i) contiguous = alive[o + i] == blk[i];
      if (!contiguous) continue;
      if (blk.size() == 2) {
        layers.push_back({o, Gen::cap});
      } else {
        for (std::size_t s = blk.size(); s > 3; --s) {
          layers.push_back({o + 2, Gen::cup});
          layers.push_back({o, Gen::tup});
        }
        layers.push_back({o, Gen::tup});
      }
      alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(o),
                  alive.begin() + static_cast<std::ptrdiff_t>(o + blk.size()));
      done[b] = true;
      progressed = true;
    }
    if (!progressed) throw Error("TypeMismatch", "blocks are not noncrossing");
  }
  return layers;
}

// X^k -> X^l from a closing diagram on k+l points, bending the last l
// inputs up through nested cups.
inline LayeredDiagram bend_closing(Category c, int k, int l, const std::vector<Layer>& closing) {
  std::vector<Layer> layers;
  for (int i = 0; i < l; ++i) layers.push_back({static_cast<std::size_t>(k + i), Gen::cup});
  layers.insert(layers.end(), closing.begin(), closing.end());
  LayeredDiagram d = make_diagram(c, Word(static_cast<std::size_t>(k), Label::X), std::move(layers));
  return d;
}

}  // namespace detail

inline LayeredDiagram matching_to_diagram(const Matching& m, Category c = Category::sl2) {
  std::vector<std::vector<int>> blocks;
  for (const auto& [a, b] : m.pairs) blocks.push_back({a, b});
  return detail::bend_closing(c, m.k, m.l, detail::closing_layers(m.k + m.l, blocks));
}

inline LayeredDiagram partition_to_diagram(const PlanarPartition& p) {
  return detail::bend_closing(Category::so3, p.k, p.l, detail::closing_layers(p.k + p.l, p.blocks));
}

// ------------------------------------------------------------ gl2 basis

namespace detail {

// Working word for building gl2 closing diagrams with offsets tracked.
struct Gl2Builder {
  Word word;
  std::vector<Layer> layers;

  void push(std::size_t offset, Gen g) {
    Layer layer{offset, g};
    word = apply_layer(Category::gl2, word, layer, layers.size());
    layers.push_back(layer);
  }
  // Moves the phantom at `o` right until it meets a phantom or the end.
  void bubble_right(std::size_t o) {
    while (o + 1 < word.size() && is_usual(word[o + 1])) {
      push(o, Gen::mixed_cross);
      ++o;
    }
  }
};

}  // namespace detail

/// One diagram per crossingless matching of the usual boundary points. The
/// phantom placement is fixed: boundary phantoms slide right over usual
/// strands, each unoriented-compatible arc gets one phantom attachment whose
/// phantom also slides right, and the phantom tail closes by phantom caps.
/// Words with nonzero total flow have an empty basis.
inline std::vector<LayeredDiagram> gl2_basis(const Word& domain, const Word& codomain) {
  const int k = static_cast<int>(domain.size()), l = static_cast<int>(codomain.size());
  // Input word of the closing diagram: domain followed by the bent codomain.
  Word closing_in = domain;
  for (int i = l - 1; i >= 0; --i) closing_in.push_back(dual(codomain[static_cast<std::size_t>(i)]));
  int total = 0, usual = 0;
  for (Label x : closing_in) {
    total += grade(x);
    usual += is_usual(x) ? 1 : 0;
  }
  std::vector<LayeredDiagram> out;
  if (total != 0 || usual % 2 != 0) return out;

  std::vector<Layer> bend;
  for (int i = 0; i < l; ++i) {
    Label c = codomain[static_cast<std::size_t>(l - 1 - i)];
    Gen g = c == Label::X ? Gen::cup : c == Label::Y ? Gen::cup_p : c == Label::P ? Gen::pcup : Gen::pcup_p;
    bend.push_back({static_cast<std::size_t>(k + i), g});
  }

  for (const Matching& m : enumerate_matchings(usual, 0)) {
    detail::Gl2Builder b;
    b.word = closing_in;
    b.layers = {};
    // 1. boundary phantoms to the right, keeping their order
    for (;;) {
      std::size_t best = b.word.size();
      for (std::size_t i = 0; i + 1 < b.word.size(); ++i)
        if (is_phantom(b.word[i]) && is_usual(b.word[i + 1])) best = i;
      if (best == b.word.size()) break;
      b.push(best, Gen::mixed_cross);
    }
    // 2. close usual arcs innermost first; usual strands form the prefix
    std::vector<int> alive(static_cast<std::size_t>(usual));
    std::iota(alive.begin(), alive.end(), 1);
    std::vector<bool> done(m.pairs.size(), false);
    for (std::size_t round = 0; round < m.pairs.size(); ++round) {
      for (std::size_t a = 0; a < m.pairs.size(); ++a) {
        if (done[a]) continue;
        auto it = std::find(alive.begin(), alive.end(), m.pairs[a].first);
        const std::size_t o = static_cast<std::size_t>(it - alive.begin());
        if (o + 1 >= alive.size() || alive[o + 1] != m.pairs[a].second) continue;
        const Label left = b.word[o], right = b.word[o + 1];
        if (left == Label::X && right == Label::Y) {
          b.push(o, Gen::cap);
        } else if (left == Label::Y && right == Label::X) {
          b.push(o, Gen::cap_p);
        } else if (left == Label::X) {
          b.push(o + 1, Gen::pcup_p);  // X P Q X
          b.push(o, Gen::mixed_cross);  // P X Q X
          b.push(o + 1, Gen::tup);      // P
          b.bubble_right(o);
        } else {
          b.push(o + 1, Gen::pcup);     // Y Q P Y
          b.push(o, Gen::mixed_cross);  // Q Y P Y
          b.push(o + 4, Gen::tdown);    // Q Y P Y X Q X
          b.push(o + 3, Gen::cap_p);    // Q Y P Q X
          b.push(o + 2, Gen::pcap);     // Q Y X
          b.push(o + 1, Gen::cap_p);    // Q
          b.bubble_right(o);
        }
        alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(o),
                    alive.begin() + static_cast<std::ptrdiff_t>(o + 2));
        done[a] = true;
        break;
      }
    }
    // 3. phantom tail
    while (!b.word.empty()) {
      std::size_t i = 0;
      while (i + 1 < b.word.size() && b.word[i] == b.word[i + 1]) ++i;
      b.push(i, b.word[i] == Label::P ? Gen::pcap : Gen::pcap_p);
    }
    std::vector<Layer> layers = bend;
    layers.insert(layers.end(), b.layers.begin(), b.layers.end());
    LayeredDiagram d = make_diagram(Category::gl2, domain, std::move(layers));
    if (d.codomain != codomain) throw Error("TypeMismatch", "gl2 basis construction lost the codomain");
    out.push_back(std::move(d));
  }
  return out;
}

// ------------------------------------------------------------ structure

/// Graph data of a diagram made of caps, cups and trivalent vertices:
/// component of each boundary point (circular numbering), number of
/// trivalent vertices per component, and whether any cycle occurs.
struct DiagramGraph {
  std::vector<int> boundary_component;  // index = boundary point - 1
  std::vector<int> vertices_per_component;
  bool has_cycle = false;
  int closed_loops = 0;
};

inline DiagramGraph diagram_graph(const LayeredDiagram& d) {
  // union-find over strand segments and vertices
  std::vector<int> parent;
  auto make = [&] {
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(parent.size()) - 1;
  };
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  DiagramGraph g;
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) g.has_cycle = true;
    else parent[a] = b;
  };
  std::vector<int> vertex_nodes;
  std::vector<int> segs;
  std::vector<int> bottom;
  for (std::size_t i = 0; i < d.domain.size(); ++i) {
    segs.push_back(make());
    bottom.push_back(segs.back());
  }
  Word w = d.domain;
  for (std::size_t li = 0; li < d.layers.size(); ++li) {
    const Layer& layer = d.layers[li];
    auto t = resolve_template(d.category, layer.gen, w, layer.offset);
    if (!t) throw Error("TypeMismatch", "ill-typed layer", "layers[" + std::to_string(li) + "]");
    const auto o = static_cast<std::ptrdiff_t>(layer.offset);
    std::vector<int> in(segs.begin() + o, segs.begin() + o + static_cast<std::ptrdiff_t>(t->domain.size()));
    std::vector<int> outs;
    switch (layer.gen) {
      case Gen::cap:
      case Gen::cap_p:
      case Gen::pcap:
      case Gen::pcap_p:
        if (find(in[0]) == find(in[1])) ++g.closed_loops;
        unite(in[0], in[1]);
        break;
      case Gen::cup:
      case Gen::cup_p:
      case Gen::pcup:
      case Gen::pcup_p: {
        int a = make(), b = make();
        unite(a, b);
        outs = {a, b};
        break;
      }
      case Gen::tup: {
        int v = make();
        vertex_nodes.push_back(v);
        for (int s : in) unite(s, v);
        break;
      }
      case Gen::tdown: {
        int v = make();
        vertex_nodes.push_back(v);
        for (int i = 0; i < 3; ++i) {
          outs.push_back(make());
          unite(outs.back(), v);
        }
        break;
      }
      case Gen::mixed_cross:
      case Gen::cross_pos:
      case Gen::cross_neg:
        outs = {in[1], in[0]};
        break;
    }
    segs.erase(segs.begin() + o, segs.begin() + o + static_cast<std::ptrdiff_t>(t->domain.size()));
    segs.insert(segs.begin() + o, outs.begin(), outs.end());
    w = apply_layer(d.category, w, layer, li);
  }
  std::vector<int> boundary = bottom;
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) boundary.push_back(*it);
  std::vector<int> roots;
  auto component_of = [&](int node) {
    int r = find(node);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it != roots.end()) return static_cast<int>(it - roots.begin());
    roots.push_back(r);
    g.vertices_per_component.push_back(0);
    return static_cast<int>(roots.size()) - 1;
  };
  for (int s : boundary) g.boundary_component.push_back(component_of(s));
  for (int v : vertex_nodes) ++g.vertices_per_component[static_cast<std::size_t>(component_of(v))];
  return g;
}

}  // namespace webcat
