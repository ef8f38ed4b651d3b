#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prepro/errors.hpp"
#include "prepro/matrix.hpp"
#include "prepro/path.hpp"

namespace prepro {

// Degree-by-degree construction of a graded quotient of a free path algebra
// on degree-1 generators by homogeneous relators. Degree n is built in the
// coordinates {g . b : g generator, b normal monomial of degree n-1}; the
// relator rows at degree n are the reductions of (relator . b') over normal
// monomials b' of degree n - deg(relator). Together with the degree-(n-1)
// tables this spans exactly the degree-n component of the ideal, so the
// non-pivot columns of one row reduction per degree are a normal-monomial
// basis. Bases and reduction maps are deterministic: columns follow the path
// order (degree, then lexicographic dart sequence).
template <class Ctx>
class GradedQuotient {
 public:
  using K = typename Ctx::Elem;

  GradedQuotient(Carrier carrier, std::vector<Element<K>> relators, Ctx ctx, int max_degree,
                 std::size_t work_cap = 1u << 22)
      : carrier_(std::move(carrier)), relators_(std::move(relators)), ctx_(ctx) {
    for (const auto& r : relators_) {
      if (r.empty()) throw InputError("zero relator");
      std::size_t deg = r.begin()->first.degree();
      if (deg < 1) throw InputError("relators must have degree >= 1");
      for (const auto& [p, c] : r)
        if (p.degree() != deg) throw InputError("inhomogeneous relator");
    }
    build(max_degree, work_cap);
  }

  const Carrier& carrier() const { return carrier_; }
  const Ctx& ctx() const { return ctx_; }
  int max_degree() const { return static_cast<int>(basis_.size()) - 1; }

  const std::vector<Path>& basis(int n) const { return basis_.at(n); }

  int dim(int n) const { return static_cast<int>(basis_.at(n).size()); }

  int total_dim() const {
    int t = 0;
    for (const auto& b : basis_) t += static_cast<int>(b.size());
    return t;
  }

  std::vector<int> dims() const {
    std::vector<int> d;
    for (const auto& b : basis_) d.push_back(static_cast<int>(b.size()));
    return d;
  }

  // H_{ij}(n): dimension of the block of classes of paths from j to i.
  Mat<Rat> block_dims(int n) const {
    std::size_t nv = carrier_.num_vertices();
    Mat<Rat> m(nv, nv);
    for (const auto& p : basis_.at(n)) m(p.tgt, p.src) += Rat(1);
    return m;
  }

  // Normal form of a path; empty result means the class is zero.
  Element<K> nf_path(const Path& w) const {
    if (static_cast<int>(w.degree()) > max_degree())
      throw InputError("extend quotient: path degree exceeds built degree");
    std::map<int, K> cur;  // index into basis(level)
    int level = 0;
    int b0 = basis_index(0, trivial_path(w.src));
    if (b0 < 0) return {};
    cur[b0] = ctx_.from_int(1);
    for (int d : w.darts) {
      std::map<int, K> next;
      const auto& tab = table_.at(level + 1);
      for (const auto& [bi, c] : cur) {
        auto it = tab.find(key(d, bi));
        if (it == tab.end()) continue;  // non-composable or annihilated
        for (const auto& [idx, coef] : it->second)
          accumulate(next, idx, c * coef);
      }
      cur = std::move(next);
      ++level;
      if (cur.empty()) return {};
    }
    Element<K> out;
    for (const auto& [bi, c] : cur) add_term(out, basis_.at(level).at(bi), c);
    return out;
  }

  // Linear, idempotent; kernel is the ideal.
  Element<K> reduce(const Element<K>& f) const {
    Element<K> out;
    for (const auto& [p, c] : f) {
      Element<K> nf = nf_path(p);
      for (const auto& [bp, bc] : nf) add_term(out, bp, c * bc);
    }
    return out;
  }

  // Product in the quotient.
  Element<K> mul(const Element<K>& f, const Element<K>& g) const { return reduce(concat(f, g)); }

  int basis_index(int n, const Path& p) const {
    const auto& b = basis_.at(n);
    auto it = std::lower_bound(b.begin(), b.end(), p,
                               [](const Path& x, const Path& y) { return PathLess{}(x, y); });
    if (it != b.end() && *it == p) return static_cast<int>(it - b.begin());
    return -1;
  }

  // Coordinates of a reduced element over basis(n); throws if mixed degree.
  std::vector<K> coords(const Element<K>& reduced, int n) const {
    std::vector<K> v(basis_.at(n).size());
    for (const auto& [p, c] : reduced) {
      if (static_cast<int>(p.degree()) != n) throw InputError("coords: element not homogeneous");
      int idx = basis_index(n, p);
      if (idx < 0) throw InputError("coords: path not in basis");
      v[idx] = c;
    }
    return v;
  }

 private:
  using Combo = std::vector<std::pair<int, K>>;

  static std::uint64_t key(int g, int b) {
    return (static_cast<std::uint64_t>(g) << 32) | static_cast<std::uint32_t>(b);
  }

  static void accumulate(std::map<int, K>& m, int idx, const K& c) {
    auto it = m.find(idx);
    if (it == m.end()) {
      if (!is_zero(c)) m.emplace(idx, c);
    } else {
      it->second += c;
      if (is_zero(it->second)) m.erase(it);
    }
  }

  void build(int max_degree, std::size_t work_cap) {
    // Degree 0: trivial paths, no relations.
    std::vector<Path> b0;
    for (int v = 0; v < static_cast<int>(carrier_.num_vertices()); ++v) b0.push_back(trivial_path(v));
    basis_.push_back(std::move(b0));
    table_.emplace_back();

    for (int n = 1; n <= max_degree; ++n) build_level(n, work_cap);
  }

  void build_level(int n, std::size_t work_cap) {
    const auto& prev = basis_.at(n - 1);
    int ngens = static_cast<int>(carrier_.darts().size());

    // Composable pairs (g, b), sorted in path order of the product word.
    std::vector<std::pair<int, int>> cols;  // (g, b_index)
    for (int bi = 0; bi < static_cast<int>(prev.size()); ++bi)
      for (int g = 0; g < ngens; ++g)
        if (carrier_.dart(g).src == prev[bi].tgt) cols.emplace_back(g, bi);
    // Path order of the product word (b's darts, then g). Comparing by basis
    // index alone would misorder degree-1 paths, whose degree-0 factors
    // differ only in the source vertex.
    std::sort(cols.begin(), cols.end(), [&prev](const auto& a, const auto& b) {
      if (prev[a.second].darts != prev[b.second].darts)
        return prev[a.second].darts < prev[b.second].darts;
      return a.first < b.first;
    });
    std::map<std::uint64_t, int> col_of;
    for (std::size_t j = 0; j < cols.size(); ++j) col_of[key(cols[j].first, cols[j].second)] = static_cast<int>(j);

    // Relator rows.
    std::vector<std::vector<K>> rows;
    for (const auto& rel : relators_) {
      int delta = static_cast<int>(rel.begin()->first.degree());
      if (n - delta < 0) continue;
      const auto& base = basis_.at(n - delta);
      for (int bi = 0; bi < static_cast<int>(base.size()); ++bi) {
        std::vector<K> row(cols.size());
        bool nonzero = false;
        for (const auto& [word, coef] : rel) {
          if (word.src != base[bi].tgt) continue;
          // Walk the word's letters over b, reducing through the tables,
          // keeping the final letter as a W-coordinate.
          std::map<int, K> cur{{bi, coef}};
          int level = n - delta;
          for (std::size_t li = 0; li + 1 < word.darts.size(); ++li) {
            std::map<int, K> next;
            const auto& tab = table_.at(level + 1);
            for (const auto& [idx, c] : cur) {
              auto it = tab.find(key(word.darts[li], idx));
              if (it == tab.end()) continue;
              for (const auto& [bidx, bc] : it->second) accumulate(next, bidx, c * bc);
            }
            cur = std::move(next);
            ++level;
            if (cur.empty()) break;
          }
          int last = word.darts.back();
          for (const auto& [idx, c] : cur) {
            auto it = col_of.find(key(last, idx));
            if (it == col_of.end()) continue;
            row[it->second] += c;
            nonzero = true;
          }
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    }

    if (rows.size() * cols.size() > work_cap)
      throw CapError("degree-" + std::to_string(n) + " working set exceeds the configured cap");

    Mat<K> m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = std::move(rows[i][j]);
    std::vector<std::size_t> pivots = rref(m);

    std::vector<bool> is_pivot(cols.size(), false);
    for (auto p : pivots) is_pivot[p] = true;

    std::vector<Path> basis_n;
    std::vector<int> new_index(cols.size(), -1);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (is_pivot[j]) continue;
      new_index[j] = static_cast<int>(basis_n.size());
      Path p = prev[cols[j].second];
      p.darts.push_back(cols[j].first);
      p.tgt = carrier_.dart(cols[j].first).tgt;
      basis_n.push_back(std::move(p));
    }

    std::map<std::uint64_t, Combo> tab;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (is_pivot[j]) continue;
      tab[key(cols[j].first, cols[j].second)] = Combo{{new_index[j], ctx_.from_int(1)}};
    }
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      Combo combo;
      for (std::size_t j = pivots[r] + 1; j < cols.size(); ++j) {
        if (is_pivot[j] || is_zero(m(r, j))) continue;
        combo.emplace_back(new_index[j], -m(r, j));
      }
      tab[key(cols[pivots[r]].first, cols[pivots[r]].second)] = std::move(combo);
    }

    basis_.push_back(std::move(basis_n));
    table_.push_back(std::move(tab));
  }

  Carrier carrier_;
  std::vector<Element<K>> relators_;
  Ctx ctx_;
  std::vector<std::vector<Path>> basis_;
  std::vector<std::map<std::uint64_t, Combo>> table_;
};

// Vertex-local relator family for the preprojective ideal: e_i(theta)e_i
// generates the same ideal as theta and keeps rows endpoint-pure.
template <class Ctx>
std::vector<Element<typename Ctx::Elem>> preprojective_relators(const Carrier& c, const Ctx& ctx) {
  std::vector<Element<typename Ctx::Elem>> rels;
  for (int v = 0; v < static_cast<int>(c.num_vertices()); ++v) {
    auto t = theta_at(c, v, ctx);
    if (!t.empty()) rels.push_back(std::move(t));
  }
  return rels;
}

// build_graded: bases and reduction maps of Pi^0 up to degree N.
template <class Ctx>
GradedQuotient<Ctx> build_graded(const Carrier& c, const Ctx& ctx, int max_degree,
                                 std::size_t work_cap = 1u << 22) {
  return GradedQuotient<Ctx>(c, preprojective_relators(c, ctx), ctx, max_degree, work_cap);
}

// Flat construction straight from the definition: enumerate all degree-n
// paths and span {u . rel . v}. Exponential in n; kept as the independent
// oracle for the recursive engine and as the literal reading of the ideal.
template <class Ctx>
std::vector<int> flat_graded_dims(const Carrier& c, const std::vector<Element<typename Ctx::Elem>>& relators,
                                  const Ctx& ctx, int max_degree, std::size_t path_cap = 100000) {
  using K = typename Ctx::Elem;
  std::vector<int> dims;
  for (int n = 0; n <= max_degree; ++n) {
    std::vector<Path> paths = enumerate_paths(c, n);
    if (paths.size() > path_cap)
      throw CapError("degree-" + std::to_string(n) + " path count exceeds the configured cap");
    std::map<Path, int, PathLess> index;
    for (std::size_t i = 0; i < paths.size(); ++i) index[paths[i]] = static_cast<int>(i);

    std::vector<std::vector<K>> rows;
    for (const auto& rel : relators) {
      int delta = static_cast<int>(rel.begin()->first.degree());
      for (int du = 0; du + delta <= n; ++du) {
        int dv = n - delta - du;
        for (const auto& u : enumerate_paths(c, du))
          for (const auto& v : enumerate_paths(c, dv)) {
            Element<K> uel = path_element(u, ctx.from_int(1));
            Element<K> vel = path_element(v, ctx.from_int(1));
            Element<K> gen = concat(concat(uel, rel), vel);
            if (gen.empty()) continue;
            std::vector<K> row(paths.size());
            for (const auto& [p, coef] : gen) row[index.at(p)] = coef;
            rows.push_back(std::move(row));
          }
      }
    }
    Mat<K> m(rows.size(), paths.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < paths.size(); ++j) m(i, j) = std::move(rows[i][j]);
    dims.push_back(static_cast<int>(paths.size()) - static_cast<int>(rref(m).size()));
  }
  return dims;
}

// --- corner (spherical) subalgebra ---

template <class Ctx>
struct CornerData {
  int vertex = 0;
  std::vector<int> dims;                 // per path degree
  std::vector<std::vector<Path>> bases;  // per path degree
};

template <class Ctx>
CornerData<Ctx> corner(const GradedQuotient<Ctx>& q, int vertex) {
  CornerData<Ctx> out;
  out.vertex = vertex;
  for (int n = 0; n <= q.max_degree(); ++n) {
    std::vector<Path> blk;
    for (const auto& p : q.basis(n))
      if (p.src == vertex && p.tgt == vertex) blk.push_back(p);
    out.dims.push_back(static_cast<int>(blk.size()));
    out.bases.push_back(std::move(blk));
  }
  return out;
}

// --- trace space Pi(n) / [Pi, Pi](n) ---

template <class Ctx>
std::vector<std::vector<typename Ctx::Elem>> commutator_rows(const GradedQuotient<Ctx>& q, int n) {
  using K = typename Ctx::Elem;
  std::vector<std::vector<K>> rows;
  const K one = q.ctx().from_int(1);
  for (int d1 = 0; 2 * d1 <= n; ++d1) {
    int d2 = n - d1;
    const auto& bu = q.basis(d1);
    const auto& bv = q.basis(d2);
    for (std::size_t i = 0; i < bu.size(); ++i) {
      std::size_t jstart = (d1 == d2) ? i + 1 : 0;
      for (std::size_t j = jstart; j < bv.size(); ++j) {
        const Path& u = bu[i];
        const Path& v = bv[j];
        if (u.tgt != v.src && u.src != v.tgt) continue;
        Element<K> uv = q.mul(path_element(u, one), path_element(v, one));
        Element<K> vu = q.mul(path_element(v, one), path_element(u, one));
        Element<K> comm = uv - vu;
        if (comm.empty()) continue;
        rows.push_back(q.coords(comm, n));
      }
    }
  }
  return rows;
}

// Per-degree dimensions of Pi(n)/[Pi,Pi](n) for 0 <= n <= N.
template <class Ctx>
std::vector<int> trace_space_dims(const GradedQuotient<Ctx>& q, int max_degree) {
  std::vector<int> out;
  for (int n = 0; n <= max_degree; ++n) {
    auto rows = commutator_rows(q, n);
    Mat<typename Ctx::Elem> m(rows.size(), q.dim(n));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < q.dim(n); ++j) m(i, j) = std::move(rows[i][j]);
    out.push_back(q.dim(n) - static_cast<int>(rref(m).size()));
  }
  return out;
}

struct Hh0Report {
  bool pass = false;
  bool in_hypotheses = true;  // false => report only, no pass/fail contract
  std::vector<int> trace_dims;  // degrees 1..N
  std::optional<Path> witness;
};

// Theorem check, finite case: Pi = [Pi,Pi] + B iff the trace space vanishes
// in every degree 1..h-2.
template <class Ctx>
Hh0Report verify_hh0_finite(const GradedQuotient<Ctx>& q, int coxeter_h, bool good_characteristic = true) {
  Hh0Report rep;
  rep.in_hypotheses = good_characteristic;
  rep.pass = true;
  for (int n = 1; n <= coxeter_h - 2; ++n) {
    auto rows = commutator_rows(q, n);
    Mat<typename Ctx::Elem> m(rows.size(), q.dim(n));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < q.dim(n); ++j) m(i, j) = std::move(rows[i][j]);
    auto pivots = rref(m);
    int codim = q.dim(n) - static_cast<int>(pivots.size());
    rep.trace_dims.push_back(codim);
    if (codim > 0) {
      rep.pass = false;
      if (!rep.witness) {
        std::vector<bool> piv(q.dim(n), false);
        for (auto p : pivots) piv[p] = true;
        for (int j = 0; j < q.dim(n); ++j)
          if (!piv[j]) {
            rep.witness = q.basis(n)[j];
            break;
          }
      }
    }
  }
  return rep;
}

// Affine case: Pi(n) = [Pi,Pi](n) + Pi_{i0,i0}(n) as subspaces, 1..N.
template <class Ctx>
Hh0Report verify_hh0_affine(const GradedQuotient<Ctx>& q, int extending_vertex, int max_degree,
                            bool good_characteristic = true) {
  using K = typename Ctx::Elem;
  Hh0Report rep;
  rep.in_hypotheses = good_characteristic;
  rep.pass = true;
  for (int n = 1; n <= max_degree; ++n) {
    auto rows = commutator_rows(q, n);
    const K one = q.ctx().from_int(1);
    for (int j = 0; j < q.dim(n); ++j) {
      const Path& p = q.basis(n)[j];
      if (p.src == extending_vertex && p.tgt == extending_vertex) {
        std::vector<K> unit(q.dim(n));
        unit[j] = one;
        rows.push_back(std::move(unit));
      }
    }
    Mat<K> m(rows.size(), q.dim(n));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < q.dim(n); ++j) m(i, j) = std::move(rows[i][j]);
    auto pivots = rref(m);
    int codim = q.dim(n) - static_cast<int>(pivots.size());
    rep.trace_dims.push_back(codim);
    if (codim > 0) {
      rep.pass = false;
      if (!rep.witness) {
        std::vector<bool> piv(q.dim(n), false);
        for (auto p : pivots) piv[p] = true;
        for (int j = 0; j < q.dim(n); ++j)
          if (!piv[j]) {
            rep.witness = q.basis(n)[j];
            break;
          }
      }
    }
  }
  return rep;
}

// --- deformed (filtered) quotient, lambda != 0 ---

struct FilteredResult {
  std::vector<int> dims_leq;  // dim Pi^lambda_{<=n} for n = 0..N
  int delta = 0;              // margin at which the dims stabilized
};

// Filtered dimensions of Pi^lambda computed with margin Delta: the ideal's
// low-degree part can receive contributions from high-degree cancellations,
// so dims are certified only once stable under Delta -> Delta + 2.
template <class Ctx>
FilteredResult build_filtered(const Carrier& c, const Ctx& ctx,
                              const std::vector<typename Ctx::Elem>& lambda, int max_degree,
                              int delta_max = 10, std::size_t path_cap = 200000) {
  using K = typename Ctx::Elem;
  if (lambda.size() != c.num_vertices()) throw InputError("lambda length must equal #vertices");
  bool all_zero = true;
  for (const auto& l : lambda)
    if (!is_zero(l)) all_zero = false;
  if (all_zero) throw InputError("build_filtered needs lambda != 0 (use build_graded)");

  std::vector<Element<K>> rels;
  for (int v = 0; v < static_cast<int>(c.num_vertices()); ++v) {
    Element<K> r = theta_at(c, v, ctx);
    add_term(r, trivial_path(v), -lambda[v]);
    if (!r.empty()) rels.push_back(std::move(r));
  }

  auto dims_at = [&](int delta) {
    int cutoff = max_degree + delta;
    std::vector<Path> paths;
    std::vector<int> count_leq(max_degree + 1, 0);
    for (int d = 0; d <= cutoff; ++d) {
      for (const auto& p : enumerate_paths(c, d)) paths.push_back(p);
      if (paths.size() > path_cap) throw CapError("filtered path count exceeds the configured cap");
    }
    // Columns ordered by descending degree so that RREF rows supported in
    // low degrees are exactly the intersection with Path_{<=n}.
    std::sort(paths.begin(), paths.end(), [](const Path& a, const Path& b) {
      if (a.degree() != b.degree()) return a.degree() > b.degree();
      return PathLess{}(a, b);
    });
    std::map<Path, int, PathLess> index;
    for (std::size_t i = 0; i < paths.size(); ++i) index[paths[i]] = static_cast<int>(i);

    std::vector<std::vector<K>> rows;
    for (const auto& rel : rels) {
      for (int du = 0; du + 2 <= cutoff; ++du)
        for (int dv = 0; du + dv + 2 <= cutoff; ++dv)
          for (const auto& u : enumerate_paths(c, du))
            for (const auto& v : enumerate_paths(c, dv)) {
              Element<K> gen = concat(concat(path_element(u, ctx.from_int(1)), rel),
                                      path_element(v, ctx.from_int(1)));
              if (gen.empty()) continue;
              std::vector<K> row(paths.size());
              for (const auto& [p, coef] : gen) row[index.at(p)] = coef;
              rows.push_back(std::move(row));
            }
    }
    Mat<K> m(rows.size(), paths.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < paths.size(); ++j) m(i, j) = std::move(rows[i][j]);
    auto pivots = rref(m);

    // Row r lies in Path_{<=n} iff every nonzero entry sits at degree <= n;
    // with descending-degree columns that is a condition on the leading one.
    std::vector<int> out(max_degree + 1);
    for (int n = 0; n <= max_degree; ++n) {
      int inside = 0;
      for (std::size_t r = 0; r < pivots.size(); ++r)
        if (static_cast<int>(paths[pivots[r]].degree()) <= n) ++inside;
      int total_leq = 0;
      for (const auto& p : paths)
        if (static_cast<int>(p.degree()) <= n) ++total_leq;
      out[n] = total_leq - inside;
    }
    return out;
  };

  std::vector<int> prev = dims_at(0);
  for (int delta = 2; delta <= delta_max + 2; delta += 2) {
    std::vector<int> cur = dims_at(delta);
    if (cur == prev) return FilteredResult{cur, delta - 2};
    prev = std::move(cur);
  }
  throw CapError("filtered dims did not stabilize; increase Delta_max");
}

// --- finitely presented graded quotients ---

struct GeneratorSpec {
  std::string name;
  std::string src, tgt;  // vertex names
};

// Free carrier on named degree-1 generators (a one-vertex carrier allowed);
// used by the star presentations and the word-calculus checks.
Carrier free_carrier(const std::vector<std::string>& vertices, const std::vector<GeneratorSpec>& gens);

template <class Ctx>
GradedQuotient<Ctx> presentation_quotient(const Carrier& free, std::vector<Element<typename Ctx::Elem>> relators,
                                          const Ctx& ctx, int max_degree) {
  return GradedQuotient<Ctx>(free, std::move(relators), ctx, max_degree);
}

// k-th concatenation power of an element (k >= 1).
template <class K>
Element<K> element_pow(const Element<K>& e, int k) {
  Element<K> r = e;
  for (int i = 1; i < k; ++i) r = concat(r, e);
  return r;
}

// true iff f reduces to zero in the quotient.
template <class Ctx>
bool verify_identity(const Element<typename Ctx::Elem>& f, const GradedQuotient<Ctx>& q) {
  return q.reduce(f).empty();
}

}  // namespace prepro
