#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

#include "prepro/errors.hpp"
#include "prepro/graph.hpp"
#include "prepro/matrix.hpp"

namespace prepro {

// A dart is one directed traversal of an edge. In graph mode every non-loop
// edge yields two mutually reverse darts and a self-loop yields a single
// self-reverse dart; in double-quiver mode every arrow a gets a genuine
// reverse a*, so loops yield two darts. theta_sign is the dart's coefficient
// in theta: +1 throughout in graph mode, -1 on original arrows and +1 on
// starred arrows in double mode (theta_Omega = sum_a (a a* - a* a)).
struct Dart {
  int src = 0, tgt = 0;
  int rev = 0;
  int theta_sign = 1;
  std::string name;
};

class Carrier {
 public:
  static Carrier graph_mode(const Graph& g);
  static Carrier double_mode(const Graph& g);
  // Free-form carrier on named degree-1 generators (no reverse structure);
  // the carrier of finitely presented quotients.
  static Carrier free_form(const std::vector<std::string>& vertices,
                           const std::vector<std::tuple<std::string, std::string, std::string>>& gens);

  Mode mode() const { return mode_; }
  const Graph& graph() const { return graph_; }
  std::size_t num_vertices() const { return graph_.num_vertices(); }
  const std::vector<Dart>& darts() const { return darts_; }
  const Dart& dart(int d) const { return darts_.at(d); }
  int dart_index(const std::string& name) const;

  // Dart-count matrix A with A(i,j) = #darts from j to i, so #paths of
  // degree n from j to i is (A^n)_{ij}. For graph and double carriers this
  // is the adjacency convention of the respective mode.
  Mat<Rat> adjacency() const {
    Mat<Rat> a(num_vertices(), num_vertices());
    for (const auto& d : darts_) a(d.tgt, d.src) += Rat(1);
    return a;
  }

  std::string vertex_name(int v) const { return graph_.vertices().at(v); }
  int vertex_index(const std::string& id) const { return graph_.vertex_index(id); }

 private:
  Mode mode_ = Mode::Graph;
  Graph graph_;
  std::vector<Dart> darts_;
};

// A composable sequence of dart traversals; darts[0] is traversed first.
// Trivial paths are carried by src alone.
struct Path {
  int src = 0;
  int tgt = 0;
  std::vector<int> darts;

  std::size_t degree() const { return darts.size(); }
  bool trivial() const { return darts.empty(); }
  bool cyclic() const { return src == tgt; }
};

inline bool operator==(const Path& a, const Path& b) {
  return a.src == b.src && a.darts == b.darts;
}

// Deterministic path order: degree, then lexicographic dart sequence, then
// source vertex (which only matters for trivial paths).
struct PathLess {
  bool operator()(const Path& a, const Path& b) const {
    if (a.darts.size() != b.darts.size()) return a.darts.size() < b.darts.size();
    if (a.darts != b.darts) return a.darts < b.darts;
    return a.src < b.src;
  }
};

inline Path trivial_path(int v) { return Path{v, v, {}}; }

inline Path dart_path(const Carrier& c, int d) {
  return Path{c.dart(d).src, c.dart(d).tgt, {d}};
}

// Extends p by one dart (traversed after p). Throws if not composable.
inline Path extend(const Carrier& c, const Path& p, int d) {
  if (c.dart(d).src != p.tgt) throw InputError("non-composable dart extension");
  Path q = p;
  q.darts.push_back(d);
  q.tgt = c.dart(d).tgt;
  return q;
}

// f . g traverses g first, then f, so that representations satisfy
// x(f.g) = x(f) x(g). Returns nullopt when target(g) != source(f).
inline std::optional<Path> compose(const Path& f, const Path& g) {
  if (f.src != g.tgt) return std::nullopt;
  Path r;
  r.src = g.src;
  r.tgt = f.tgt;
  r.darts = g.darts;
  r.darts.insert(r.darts.end(), f.darts.begin(), f.darts.end());
  return r;
}

// Finite formal linear combination of paths with exact coefficients; zero
// coefficients are never stored.
template <class K>
using Element = std::map<Path, K, PathLess>;

template <class K>
void add_term(Element<K>& e, const Path& p, const std::type_identity_t<K>& c) {
  if (is_zero(c)) return;
  auto it = e.find(p);
  if (it == e.end()) {
    e.emplace(p, c);
  } else {
    it->second += c;
    if (is_zero(it->second)) e.erase(it);
  }
}

template <class K>
Element<K> operator+(const Element<K>& a, const Element<K>& b) {
  Element<K> r = a;
  for (const auto& [p, c] : b) add_term(r, p, c);
  return r;
}

template <class K>
Element<K> operator-(const Element<K>& a, const Element<K>& b) {
  Element<K> r = a;
  for (const auto& [p, c] : b) add_term(r, p, -c);
  return r;
}

template <class K>
Element<K> operator*(const std::type_identity_t<K>& s, const Element<K>& a) {
  Element<K> r;
  for (const auto& [p, c] : a) add_term(r, p, s * c);
  return r;
}

// Bilinear concatenation product.
template <class K>
Element<K> concat(const Element<K>& f, const Element<K>& g) {
  Element<K> r;
  for (const auto& [pf, cf] : f)
    for (const auto& [pg, cg] : g)
      if (auto h = compose(pf, pg)) add_term(r, *h, cf * cg);
  return r;
}

template <class K>
Element<K> path_element(const Path& p, const K& one) {
  Element<K> e;
  add_term(e, p, one);
  return e;
}

// theta (graph mode) / theta_Omega (double mode): the canonical degree-2
// element, as a sum over darts of theta_sign(d) * rev(d).d. A graph-mode
// self-loop contributes the single term loop^2.
template <class Ctx>
Element<typename Ctx::Elem> theta(const Carrier& c, const Ctx& ctx) {
  Element<typename Ctx::Elem> t;
  for (int d = 0; d < static_cast<int>(c.darts().size()); ++d) {
    const Dart& dd = c.dart(d);
    Path p{dd.src, dd.src, {d, dd.rev}};
    add_term(t, p, ctx.from_int(dd.theta_sign));
  }
  return t;
}

// Vertex component theta_i = e_i . theta . e_i.
template <class Ctx>
Element<typename Ctx::Elem> theta_at(const Carrier& c, int vertex, const Ctx& ctx) {
  Element<typename Ctx::Elem> t;
  for (int d = 0; d < static_cast<int>(c.darts().size()); ++d) {
    const Dart& dd = c.dart(d);
    if (dd.src != vertex) continue;
    Path p{dd.src, dd.src, {d, dd.rev}};
    add_term(t, p, ctx.from_int(dd.theta_sign));
  }
  return t;
}

// Lusztig product f o g = f . (theta - lambda) . g in the free algebra.
template <class Ctx>
Element<typename Ctx::Elem> lusztig_product(const Element<typename Ctx::Elem>& f,
                                            const Element<typename Ctx::Elem>& g,
                                            const std::vector<typename Ctx::Elem>& lambda,
                                            const Carrier& c, const Ctx& ctx) {
  if (lambda.size() != c.num_vertices())
    throw InputError("lambda length must equal the number of vertices");
  Element<typename Ctx::Elem> mid = theta(c, ctx);
  for (std::size_t i = 0; i < lambda.size(); ++i)
    add_term(mid, trivial_path(static_cast<int>(i)), -lambda[i]);
  return concat(concat(f, mid), g);
}

// All paths of exact degree n, optionally restricted to target i / source j;
// deterministic order (degree, then lexicographic dart sequence).
std::vector<Path> enumerate_paths(const Carrier& c, int n, std::optional<int> target = std::nullopt,
                                  std::optional<int> source = std::nullopt);

// Path/element literals: "e:v" is the trivial path at v; "d1.d2.d3" is a
// dart-name sequence read right-to-left (rightmost traversed first).
// Elements: "3/2*a1.a2 - 1*e:v".
Path parse_path(const Carrier& c, const std::string& text);
std::string format_path(const Carrier& c, const Path& p);

template <class Ctx>
Element<typename Ctx::Elem> parse_element(const Carrier& c, const std::string& text, const Ctx& ctx);

template <class K>
std::string format_element(const Carrier& c, const Element<K>& e);

// Canonical representative of the cyclic class of a path: the rotation that
// is minimal in the deterministic path order. Identity on trivial paths.
Path cyclic_canonical(const Carrier& c, const Path& p);

// Projection onto the span of cyclic classes: non-cyclic paths map to zero,
// cyclic paths to their canonical rotation. Two elements have equal images
// iff they agree modulo commutators of the free path algebra.
template <class K>
Element<K> necklace_projection(const Carrier& c, const Element<K>& e) {
  Element<K> r;
  for (const auto& [p, coeff] : e) {
    if (!p.cyclic()) continue;
    add_term(r, cyclic_canonical(c, p), coeff);
  }
  return r;
}

// --- implementation of the templated literal functions ---

namespace detail {
std::vector<std::string> split_terms(const std::string& text);
}

template <class Ctx>
Element<typename Ctx::Elem> parse_element(const Carrier& c, const std::string& text, const Ctx& ctx) {
  Element<typename Ctx::Elem> e;
  for (const auto& term : detail::split_terms(text)) {
    std::string body = term;
    Rat coeff(1);
    auto star = body.find('*');
    if (star != std::string::npos && body.substr(0, star).find_first_of(".e:") == std::string::npos) {
      coeff = parse_rat(body.substr(0, star));
      body = body.substr(star + 1);
    }
    add_term(e, parse_path(c, body), ctx.from_rat(coeff));
  }
  return e;
}

template <class K>
std::string format_element(const Carrier& c, const Element<K>& e) {
  if (e.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [p, coeff] : e) {
    std::string cs = to_string(coeff);
    if (!first) {
      if (!cs.empty() && cs[0] == '-') {
        out += " - ";
        cs = cs.substr(1);
      } else {
        out += " + ";
      }
    }
    out += cs + "*" + format_path(c, p);
    first = false;
  }
  return out;
}

}  // namespace prepro
