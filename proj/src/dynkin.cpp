#include "prepro/dynkin.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "prepro/errors.hpp"

namespace prepro {

namespace {

// Multigraph skeleton used for shape matching: loop count, parallel edge
// count, simple-degree list, arm structure around a unique branch vertex.
struct Shape {
  int n = 0;
  std::vector<int> loops_at;                  // loop count per vertex
  std::vector<std::vector<int>> adj;          // simple adjacency (with multiplicity)
  std::vector<int> degree;                    // loops excluded
  int total_loops = 0;
  int max_multiplicity = 1;
};

Shape shape_of(const Graph& g) {
  Shape s;
  s.n = static_cast<int>(g.num_vertices());
  s.loops_at.assign(s.n, 0);
  s.adj.assign(s.n, {});
  s.degree.assign(s.n, 0);
  std::map<std::pair<int, int>, int> mult;
  for (const auto& [a, b] : g.edges()) {
    int i = g.vertex_index(a), j = g.vertex_index(b);
    if (i == j) {
      ++s.loops_at[i];
      ++s.total_loops;
      continue;
    }
    s.adj[i].push_back(j);
    s.adj[j].push_back(i);
    ++s.degree[i];
    ++s.degree[j];
    ++mult[{std::min(i, j), std::max(i, j)}];
  }
  for (const auto& [e, m] : mult) s.max_multiplicity = std::max(s.max_multiplicity, m);
  return s;
}

// Is the loop-free part a simple chain? Returns the vertex order if so.
std::optional<std::vector<int>> chain_order(const Shape& s) {
  if (s.max_multiplicity > 1) return std::nullopt;
  if (s.n == 1) return std::vector<int>{0};
  std::vector<int> ends;
  for (int v = 0; v < s.n; ++v) {
    if (s.degree[v] > 2) return std::nullopt;
    if (s.degree[v] == 1) ends.push_back(v);
    if (s.degree[v] == 0) return std::nullopt;  // disconnected piece
  }
  if (ends.size() != 2) return std::nullopt;
  std::vector<int> order = {ends[0]};
  int prev = -1, cur = ends[0];
  while (static_cast<int>(order.size()) < s.n) {
    int next = -1;
    for (int w : s.adj[cur])
      if (w != prev) next = w;
    if (next < 0) return std::nullopt;
    order.push_back(next);
    prev = cur;
    cur = next;
  }
  return order;
}

// Arms of a tree with exactly one branch vertex: lists of vertices walking
// outward from the center, longest first.
struct StarShape {
  int center = -1;
  std::vector<std::vector<int>> arms;
};

std::optional<StarShape> star_shape(const Shape& s) {
  if (s.total_loops > 0 || s.max_multiplicity > 1) return std::nullopt;
  int center = -1;
  for (int v = 0; v < s.n; ++v) {
    if (s.degree[v] >= 3) {
      if (center >= 0) return std::nullopt;
      center = v;
    }
  }
  if (center < 0) return std::nullopt;
  StarShape st;
  st.center = center;
  for (int w : s.adj[center]) {
    std::vector<int> arm = {w};
    int prev = center, cur = w;
    while (true) {
      int next = -1;
      int fanout = 0;
      for (int u : s.adj[cur])
        if (u != prev) {
          next = u;
          ++fanout;
        }
      if (fanout > 1) return std::nullopt;  // second branch vertex
      if (fanout == 0) break;
      arm.push_back(next);
      prev = cur;
      cur = next;
    }
    st.arms.push_back(arm);
  }
  if (std::accumulate(st.arms.begin(), st.arms.end(), 1u,
                      [](unsigned a, const std::vector<int>& v) { return a + v.size(); }) !=
      static_cast<unsigned>(s.n))
    return std::nullopt;  // a cycle through the center
  std::sort(st.arms.begin(), st.arms.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return st;
}

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// Recognize the finite families on a connected graph already known to have
// 2*Id - A positive definite in the relevant mode.
DynkinClass match_finite(const Graph& g, Mode mode) {
  Shape s = shape_of(g);
  DynkinClass c;
  c.kind = DynKind::FiniteADET;
  c.rank = s.n;

  if (s.total_loops == 1 && mode == Mode::Graph) {
    // T_n: chain with a self-loop at one end.
    auto order = chain_order(s);
    if (order && s.loops_at[order->front()] == 1) std::reverse(order->begin(), order->end());
    if (order && s.loops_at[order->back()] == 1) {
      c.family = Family::T;
      c.coxeter_h = 2 * s.n + 1;
      c.involution_p = identity_perm(s.n);
      return c;
    }
  }
  if (s.total_loops == 0 && s.max_multiplicity == 1) {
    if (auto order = chain_order(s)) {
      c.family = Family::A;
      c.coxeter_h = s.n + 1;
      c.involution_p.assign(s.n, 0);
      for (int k = 0; k < s.n; ++k) c.involution_p[(*order)[k]] = (*order)[s.n - 1 - k];
      return c;
    }
    if (auto st = star_shape(s)) {
      std::vector<std::size_t> arms;
      for (const auto& a : st->arms) arms.push_back(a.size());
      if (arms.size() == 3) {
        auto [a, b, d] = std::tie(arms[0], arms[1], arms[2]);
        if (b == 1 && d == 1) {
          c.family = Family::D;
          c.coxeter_h = 2 * s.n - 2;
          if (s.n % 2 == 0) {
            c.involution_p = identity_perm(s.n);
          } else {
            c.involution_p = identity_perm(s.n);
            std::swap(c.involution_p[st->arms[1][0]], c.involution_p[st->arms[2][0]]);
          }
          return c;
        }
        if (a == 2 && b == 2 && d == 1 && s.n == 6) {
          c.family = Family::E;
          c.coxeter_h = 12;
          c.involution_p = identity_perm(6);
          // Swap the two long arms vertex by vertex.
          for (int k = 0; k < 2; ++k)
            std::swap(c.involution_p[st->arms[0][k]], c.involution_p[st->arms[1][k]]);
          return c;
        }
        if (a == 3 && b == 2 && d == 1 && s.n == 7) {
          c.family = Family::E;
          c.coxeter_h = 18;
          c.involution_p = identity_perm(7);
          return c;
        }
        if (a == 4 && b == 2 && d == 1 && s.n == 8) {
          c.family = Family::E;
          c.coxeter_h = 30;
          c.involution_p = identity_perm(8);
          return c;
        }
      }
    }
  }
  throw InputError("positive definite carrier with unrecognized shape");
}

// Affine ADE shapes (plus the rank-0 Jordan case in double mode).
std::optional<DynkinClass> match_affine(const Graph& g, Mode mode) {
  Shape s = shape_of(g);
  DynkinClass c;
  c.kind = DynKind::Affine;
  c.rank = s.n - 1;

  if (s.n == 1 && s.total_loops == 1 && mode == Mode::Double) {
    c.family = Family::A;
    c.rank = 0;
    return c;
  }
  if (s.total_loops > 0) return std::nullopt;
  if (s.n == 2 && s.max_multiplicity == 2 && s.adj[0].size() == 2) {
    c.family = Family::A;  // \hat{A}_1
    return c;
  }
  if (s.max_multiplicity > 1) return std::nullopt;
  if (s.n >= 3 && std::all_of(s.degree.begin(), s.degree.end(), [](int d) { return d == 2; })) {
    c.family = Family::A;  // single cycle
    return c;
  }
  // \hat{D}_4: one 4-valent center with 4 leaves.
  if (s.n == 5) {
    int quad = -1;
    for (int v = 0; v < s.n; ++v)
      if (s.degree[v] == 4) quad = v;
    if (quad >= 0 &&
        std::count(s.degree.begin(), s.degree.end(), 1) == 4) {
      c.family = Family::D;
      return c;
    }
  }
  // \hat{D}_n (n >= 5): tree with two 3-valent vertices, two leaves at each.
  {
    std::vector<int> tri;
    for (int v = 0; v < s.n; ++v)
      if (s.degree[v] == 3) tri.push_back(v);
    if (tri.size() == 2 && std::count(s.degree.begin(), s.degree.end(), 1) == 4 &&
        std::all_of(s.degree.begin(), s.degree.end(), [](int d) { return d <= 3; })) {
      bool forks = true;
      for (int t : tri) {
        int leaves = 0;
        for (int w : s.adj[t])
          if (s.degree[w] == 1) ++leaves;
        if (leaves < 2) forks = false;
      }
      if (forks) {
        c.family = Family::D;
        return c;
      }
    }
  }
  if (auto st = star_shape(s)) {
    std::vector<std::size_t> arms;
    for (const auto& a : st->arms) arms.push_back(a.size());
    if (arms == std::vector<std::size_t>{2, 2, 2} && s.n == 7) {
      c.family = Family::E;  // \hat{E}_6
      return c;
    }
    if (arms == std::vector<std::size_t>{3, 3, 1} && s.n == 8) {
      c.family = Family::E;  // \hat{E}_7
      return c;
    }
    if (arms == std::vector<std::size_t>{5, 2, 1} && s.n == 9) {
      c.family = Family::E;  // \hat{E}_8
      return c;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string DynkinClass::label() const {
  switch (kind) {
    case DynKind::FiniteADET:
      return std::string(1, family_letter(family)) + std::to_string(rank);
    case DynKind::Affine:
      return std::string(1, family_letter(family)) + std::to_string(rank) + "~";
    case DynKind::Other:
      return "Other";
  }
  return "?";
}

bool is_positive_definite_2i_minus(const Mat<Rat>& a) {
  std::size_t n = a.rows();
  Mat<Rat> c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = (i == j ? Rat(2) : Rat(0)) - a(i, j);
  // Leading principal minors by fraction-free-ish elimination on a copy.
  for (std::size_t k = 0; k < n; ++k) {
    // minor_k = product of pivots so far times current pivot; equivalently
    // run Gaussian elimination and require every pivot > 0.
    if (sgn(c(k, k)) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(c(i, k))) continue;
      Rat f = c(i, k) / c(k, k);
      for (std::size_t j = k; j < n; ++j) c(i, j) -= f * c(k, j);
    }
  }
  return true;
}

DynkinClass classify(const Graph& g, Mode mode) {
  if (!g.connected()) throw InputError("graph not connected");
  Mat<Rat> a = g.adjacency(mode);
  if (is_positive_definite_2i_minus(a)) return match_finite(g, mode);
  if (auto aff = match_affine(g, mode)) return *aff;
  DynkinClass c;
  c.kind = DynKind::Other;
  return c;
}

std::set<int> bad_primes(const DynkinClass& c) {
  if (c.kind == DynKind::Other || c.family == Family::T)
    throw DomainError("bad primes undefined for this class");
  switch (c.family) {
    case Family::A: return {};
    case Family::D: return {2};
    case Family::E:
      if (c.rank == 8 && c.kind == DynKind::FiniteADET) return {2, 3, 5};
      if (c.rank == 8 && c.kind == DynKind::Affine) return {2, 3, 5};  // \hat{E}_8
      if (c.kind == DynKind::Affine) return c.rank == 6 ? std::set<int>{2, 3} : std::set<int>{2, 3};
      return {2, 3};  // E6, E7
    default: break;
  }
  throw DomainError("bad primes undefined for this class");
}

std::vector<int> involution_p(const Graph& g, Mode mode) {
  DynkinClass c = classify(g, mode);
  if (c.kind != DynKind::FiniteADET) throw DomainError("involution P defined for ADET classes only");
  return c.involution_p;
}

std::vector<int> extending_vertices(const Graph& g, Mode mode) {
  DynkinClass c = classify(g, mode);
  if (c.kind != DynKind::Affine) throw DomainError("extending vertices defined for affine graphs only");
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
    Graph h = g.without_vertex(v);
    if (h.num_vertices() == 0 || !h.connected()) continue;
    DynkinClass hc = classify(h, mode);
    if (hc.kind == DynKind::FiniteADET && hc.family != Family::T) out.push_back(v);
  }
  return out;
}

FrobeniusPerron frobenius_perron(const Mat<Rat>& a) {
  std::size_t n = a.rows();
  if (n == 0) throw InputError("empty adjacency");
  // Connectivity of the carrier == irreducibility of A; check via reachability.
  {
    std::vector<bool> vis(n, false);
    std::vector<std::size_t> stack = {0};
    vis[0] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < n; ++w)
        if (!vis[w] && (!is_zero(a(v, w)) || !is_zero(a(w, v)))) {
          vis[w] = true;
          stack.push_back(w);
        }
    }
    if (!std::all_of(vis.begin(), vis.end(), [](bool b) { return b; }))
      throw InputError("graph not connected");
  }
  std::vector<std::vector<double>> ad(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ad[i][j] = a(i, j).get_d();

  // Iterate with A + I: primitive for connected carriers, so the iteration
  // converges even for bipartite graphs.
  std::vector<double> v(n, 1.0), av(n), sv(n);
  FrobeniusPerron out;
  const int max_iter = 100000;
  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    double lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += ad[i][j] * v[j];
      av[i] = s;
      sv[i] = s + v[i];
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += v[i] * av[i];
      den += v[i] * v[i];
    }
    lambda = num / den;
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i) resid = std::max(resid, std::fabs(av[i] - lambda * v[i]));
    double mx = 0.0;
    for (double x : sv) mx = std::max(mx, std::fabs(x));
    for (std::size_t i = 0; i < n; ++i) v[i] = sv[i] / mx;
    if (resid < 1e-12) {
      out.eigenvalue = lambda;
      break;
    }
    out.eigenvalue = lambda;
  }
  double mx = 0.0;
  for (double x : v) mx = std::max(mx, x);
  for (double& x : v) x /= mx;
  out.eigenvector = v;
  return out;
}

}  // namespace prepro
