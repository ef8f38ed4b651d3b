#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prepro/dynkin.hpp"
#include "prepro/matrix.hpp"
#include "prepro/quotient.hpp"
#include "prepro/rational.hpp"

namespace prepro {

// Degree-truncated power series with vertex-indexed rational coefficient
// matrices. All arithmetic exact and within the truncation.
struct MatrixSeries {
  int trunc = 0;                 // highest retained degree
  std::vector<Mat<Rat>> coeff;   // coeff[n], n = 0..trunc

  std::size_t size() const { return coeff.size(); }
  Rat sum_all() const {
    Rat s(0);
    for (const auto& m : coeff)
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j);
    return s;
  }
};

// (1 - A t + t^2)^{-1} up to degree N via C(n) = A C(n-1) - C(n-2).
MatrixSeries invert_one_minus(const Mat<Rat>& a, int trunc);

// Branch by classification: (1 + P t^h)(1 - A t + t^2)^{-1} for ADET,
// otherwise (1 - A t + t^2)^{-1}.
MatrixSeries closed_hilbert(const DynkinClass& c, const Mat<Rat>& a, int trunc);

struct SeriesMismatch {
  std::size_t i = 0, j = 0;
  int degree = 0;
};

struct SeriesComparison {
  bool equal = false;
  std::optional<SeriesMismatch> first_mismatch;
};

SeriesComparison compare_series(const MatrixSeries& a, const MatrixSeries& b);

// dim Pi^0 = h(h+1)r/6 for ADET.
Rat dim_formula(const DynkinClass& c);

// Scalar series as rational coefficient lists.
using ScalarSeries = std::vector<Rat>;

// Central coefficient of (1 - A t + t^2)^{-1} for a star, by the
// Lusztig-Tits expression. Each summand is normalized to nonnegative powers
// of t before the series inversion.
ScalarSeries lusztig_tits_central(const std::vector<int>& ray_lengths, int trunc);

// Spherical-subalgebra Hilbert series in the x-grading (deg x_r = 1):
// (1 + t - sum (t - t^{p_s})/(1 - t^{p_s}))^{-1}, times (1 + t^{h/2}) for
// finite DE stars.
ScalarSeries spherical_closed(const std::vector<int>& ray_lengths, const DynkinClass& c, int trunc);

// 2 / (1/a + 1/b + 1/c - 1) = |Gamma|/2 for a finite Kleinian triple.
Rat kleinian_dim(int a, int b, int c);

// Numerical Koszulity consistency check: empirical * (1 - A t + t^2) = Id up
// to the truncation.
bool koszul_criterion(const MatrixSeries& empirical, const Mat<Rat>& a);

// Empirical Hilbert series of a built quotient: coefficient (i,j) of t^n is
// dim of the (i,j) block of the degree-n basis.
template <class Ctx>
MatrixSeries hilbert_empirical(const GradedQuotient<Ctx>& q) {
  MatrixSeries s;
  s.trunc = q.max_degree();
  for (int n = 0; n <= q.max_degree(); ++n) s.coeff.push_back(q.block_dims(n));
  return s;
}

// --- small exact polynomial helpers (shared by the scalar series ops) ---

using Poly = std::vector<Rat>;  // coefficient list, constant term first

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Rat& s, const Poly& a);
// Series expansion of num/den up to degree trunc; den must have nonzero
// constant term.
ScalarSeries poly_div_series(const Poly& num, const Poly& den, int trunc);

}  // namespace prepro
