#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prepro/errors.hpp"
#include "prepro/matrix.hpp"
#include "prepro/path.hpp"
#include "prepro/rational.hpp"
#include "prepro/rng.hpp"

namespace prepro {

// A point (x, p, q) of the Nakajima linear space N_{D,V}: one matrix per
// arrow of the double quiver (x(a): V_tail -> V_head), framing maps
// p_i: D_i -> V_i and q_i: V_i -> D_i. All entries exact rationals.
struct RepPoint {
  Carrier dq;  // double-mode carrier
  std::vector<int> dim_v, dim_d;
  std::vector<Mat<Rat>> x;  // per dart
  std::vector<Mat<Rat>> p;  // per vertex, dimV x dimD
  std::vector<Mat<Rat>> q;  // per vertex, dimD x dimV
};

RepPoint zero_rep_point(const Carrier& dq, std::vector<int> dim_v, std::vector<int> dim_d);

// x extended multiplicatively along a path, x(e_i) = Id.
Mat<Rat> x_of_path(const RepPoint& r, const Path& w);

// Moment map mu_i = (x(theta_Omega))_i - p_i q_i, exactly.
std::vector<Mat<Rat>> moment(const RepPoint& r);

bool on_fiber(const RepPoint& r, const std::vector<Rat>& lambda);

// Constructive sampler for mu^{-1}(lambda): random x, random injective q,
// and p solved from p_i q_i = (x(theta_Omega))_i - lambda_i Id on im(q_i),
// zero on a fixed complement. Exact fiber membership by construction.
RepPoint sample_moment_fiber(const Carrier& dq, const std::vector<int>& dim_v,
                             const std::vector<int>& dim_d, const std::vector<Rat>& lambda,
                             Rng& rng);

// The Lusztig map value q x(f) p, extended linearly over the element and
// assembled blockwise into one matrix on the total framing space (sum D_i).
Mat<Rat> lusztig_map(const RepPoint& r, const Element<Rat>& f);

// theta(f) theta(g) = theta(f o g) on the fiber mu = lambda; exact check.
bool check_hom(const RepPoint& r, const std::vector<Rat>& lambda, const Element<Rat>& f,
               const Element<Rat>& g);

// Base change by per-vertex invertible matrices; mu conjugates, theta is
// unchanged.
RepPoint gl_action(const RepPoint& r, const std::vector<Mat<Rat>>& g);

// --- trace decomposition (Theorem-1.5(a)-backed rewriting of V-traces) ---

struct TraceDecomposition {
  Element<Rat> f_prime;       // Tr x(f) = Tr(q x(f') p) + c on the fiber
  std::vector<Rat> c0;        // c = sum_i c0[i] * dimV_i
  int delta = 0;              // margin at which the linear system solved
};

// Writes a cycle f as ideal part + commutator + degree-zero part by exact
// linear algebra in necklace coordinates (cyclic classes of the free
// algebra), with growing margin. Infeasibility would contradict the trace
// theorem, so it is flagged loudly.
TraceDecomposition trace_decompose(const Carrier& dq, const Element<Rat>& f,
                                   const std::vector<Rat>& lambda, int delta_max = 8);

Rat trace_of_decomposition(const RepPoint& r, const Element<Rat>& f, const TraceDecomposition& d);

// --- necklace bracket on cyclic classes ---

// {f, g} = sum_{a in H} (P_a(f,g) - P_a(g,f)) + f g - g f, returned as
// canonical cyclic representatives. P_a cuts one occurrence of a from f and
// one of a* from g and splices the two open walks into a single cyclic
// class; when the surgery disconnects (both cut pairs trivial, as in
// {a, a*}), the two closed pieces are both kept.
Element<Rat> necklace_bracket(const Carrier& dq, const Element<Rat>& f, const Element<Rat>& g);

// Variant gluing with the Lusztig product: one (theta_Omega - lambda)
// insertion at the splice seam. With this gluing the trace comparison below
// is an exact identity on the moment fiber.
Element<Rat> necklace_bracket_lusztig(const Carrier& dq, const Element<Rat>& f,
                                      const Element<Rat>& g, const std::vector<Rat>& lambda);

// --- polynomial entry functions and the Poisson bivector ---

struct EntryFactor {
  enum Kind { P, Q, X } kind;
  int idx = 0;  // vertex for P/Q, dart for X
};

struct EntryAtom {
  enum Kind { Entry, Trace } kind = Trace;
  std::vector<EntryFactor> word;  // matrix-product order, leftmost applied last
  int row = 0, col = 0;           // Entry only
};

// Product of atoms; a polynomial function on N_{D,V} with combinatorial
// derivatives in every coordinate.
using EntryFunction = std::vector<EntryAtom>;

EntryFunction d_trace_function(const Path& cycle);  // Tr(q x(f) p)
EntryFunction v_trace_function(const Path& cycle);  // Tr x(f)
EntryFunction lvalue_entry_function(const Path& f, int row, int col);  // (q x(f) p)_{row,col}

Rat eval_entry_function(const EntryFunction& f, const RepPoint& r);

// Gradient with respect to one coordinate block, evaluated at r.
Mat<Rat> entry_function_gradient(const EntryFunction& f, const RepPoint& r, EntryFactor::Kind kind,
                                 int idx);

// {F,G}(r) for the bivector sum_i Tr(dp_i ^ dq_i) + sum_{a in H}
// Tr(dx(a) ^ dx(a*)), with the convention {p_st, q_uv} = delta_sv delta_tu.
Rat bivector_bracket(const EntryFunction& f, const EntryFunction& g, const RepPoint& r);

// Exact derivative oracle: values of f on the affine line r + t E at
// t = 0..m interpolate a degree-<=m polynomial whose derivative at 0 is an
// exact rational combination of the sampled values.
Rat finite_difference_derivative(const EntryFunction& f, const RepPoint& r, EntryFactor::Kind kind,
                                 int idx, int row, int col);

// --- bracket comparison harness ---

struct BracketComparison {
  int epsilon = 1;          // best global sign
  bool determined = false;  // false when every residual vanishes under both signs
  bool match = false;       // residual 0 under the chosen sign
  Rat max_residual;         // under the chosen sign
  int evaluations = 0;
};

BracketComparison compare_brackets(const Carrier& dq, const std::vector<Element<Rat>>& cycles,
                                   const std::vector<RepPoint>& ensemble,
                                   const std::vector<Rat>& lambda, bool lusztig_glue = false);

}  // namespace prepro
