#include "prepro/series.hpp"

#include <algorithm>

#include "prepro/errors.hpp"

namespace prepro {

MatrixSeries invert_one_minus(const Mat<Rat>& a, int trunc) {
  std::size_t n = a.rows();
  if (a.cols() != n) throw InputError("adjacency must be square");
  MatrixSeries s;
  s.trunc = trunc;
  s.coeff.reserve(trunc + 1);
  Mat<Rat> id = Mat<Rat>::identity(n, Rat(1));
  for (int k = 0; k <= trunc; ++k) {
    if (k == 0) {
      s.coeff.push_back(id);
    } else if (k == 1) {
      s.coeff.push_back(a);
    } else {
      s.coeff.push_back(a * s.coeff[k - 1] - s.coeff[k - 2]);
    }
  }
  return s;
}

MatrixSeries closed_hilbert(const DynkinClass& c, const Mat<Rat>& a, int trunc) {
  MatrixSeries s = invert_one_minus(a, trunc);
  if (c.kind != DynKind::FiniteADET) return s;
  // Multiply by (1 + P t^h).
  std::size_t n = a.rows();
  Mat<Rat> p(n, n);
  for (std::size_t j = 0; j < n; ++j) p(c.involution_p.at(j), j) = Rat(1);
  MatrixSeries out;
  out.trunc = trunc;
  for (int k = 0; k <= trunc; ++k) {
    Mat<Rat> m = s.coeff[k];
    if (k >= c.coxeter_h) m = m + p * s.coeff[k - c.coxeter_h];
    out.coeff.push_back(std::move(m));
  }
  return out;
}

SeriesComparison compare_series(const MatrixSeries& a, const MatrixSeries& b) {
  if (a.trunc != b.trunc || a.size() != b.size())
    throw InputError("compare_series: mismatched truncation");
  SeriesComparison cmp;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& ma = a.coeff[k];
    const auto& mb = b.coeff[k];
    if (ma.rows() != mb.rows() || ma.cols() != mb.cols())
      throw InputError("compare_series: mismatched index sets");
    for (std::size_t i = 0; i < ma.rows(); ++i)
      for (std::size_t j = 0; j < ma.cols(); ++j)
        if (ma(i, j) != mb(i, j)) {
          cmp.equal = false;
          cmp.first_mismatch = SeriesMismatch{i, j, static_cast<int>(k)};
          return cmp;
        }
  }
  cmp.equal = true;
  return cmp;
}

Rat dim_formula(const DynkinClass& c) {
  if (c.kind != DynKind::FiniteADET) throw DomainError("dimension formula applies to ADET only");
  return Rat(c.coxeter_h) * Rat(c.coxeter_h + 1) * Rat(c.rank) / Rat(6);
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r = a;
  if (b.size() > r.size()) r.resize(b.size(), Rat(0));
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Poly poly_scale(const Rat& s, const Poly& a) {
  Poly r = a;
  for (auto& x : r) x *= s;
  return r;
}

ScalarSeries poly_div_series(const Poly& num, const Poly& den, int trunc) {
  if (den.empty() || is_zero(den[0])) throw InputError("series division needs an invertible constant term");
  ScalarSeries out(trunc + 1, Rat(0));
  for (int k = 0; k <= trunc; ++k) {
    Rat acc = k < static_cast<int>(num.size()) ? num[k] : Rat(0);
    for (int j = 1; j <= k; ++j) {
      if (j < static_cast<int>(den.size()) && !is_zero(den[j])) acc -= den[j] * out[k - j];
    }
    out[k] = acc / den[0];
  }
  return out;
}

namespace {

// t^k as a polynomial.
Poly monomial(int k) {
  Poly p(k + 1, Rat(0));
  p[k] = Rat(1);
  return p;
}

}  // namespace

ScalarSeries lusztig_tits_central(const std::vector<int>& ray_lengths, int trunc) {
  for (int p : ray_lengths)
    if (p < 1) throw InputError("ray lengths must be >= 1");
  // Summand s: t (t^{p-1} - t^{1-p}) / (t^p - t^{-p}) = (t^{2p} - t^2)/(t^{2p} - 1)
  // after clearing t^p; the full expression is assembled over the common
  // denominator prod_s (t^{2p_s} - 1), with an extra sign to keep the
  // constant term positive.
  Poly den = {Rat(1)};
  for (int p : ray_lengths) {
    Poly d = monomial(2 * p);  // t^{2p} - 1
    d[0] = Rat(-1);
    den = poly_mul(den, d);
  }
  Poly acc;  // (1 + t^2) * den - sum_s (t^{2p_s} - t^2) * den / (t^{2p_s} - 1)
  {
    Poly head = poly_add(monomial(0), monomial(2));
    acc = poly_mul(head, den);
  }
  for (std::size_t s = 0; s < ray_lengths.size(); ++s) {
    Poly partial = {Rat(1)};
    for (std::size_t r = 0; r < ray_lengths.size(); ++r) {
      if (r == s) continue;
      Poly d = monomial(2 * ray_lengths[r]);
      d[0] = Rat(-1);
      partial = poly_mul(partial, d);
    }
    Poly numer = monomial(2 * ray_lengths[s]);  // t^{2p} - t^2
    numer = poly_add(numer, poly_scale(Rat(-1), monomial(2)));
    acc = poly_add(acc, poly_scale(Rat(-1), poly_mul(numer, partial)));
  }
  return poly_div_series(den, acc, trunc);
}

ScalarSeries spherical_closed(const std::vector<int>& ray_lengths, const DynkinClass& c, int trunc) {
  for (int p : ray_lengths)
    if (p < 1) throw InputError("ray lengths must be >= 1");
  // (1 + t - sum_s (t - t^{p_s})/(1 - t^{p_s}))^{-1} over the common
  // denominator prod_s (1 - t^{p_s}).
  Poly den = {Rat(1)};
  for (int p : ray_lengths) {
    Poly d = monomial(p);
    d[0] = Rat(1);
    d[p] = Rat(-1);
    den = poly_mul(den, d);
  }
  Poly acc = poly_mul(poly_add(monomial(0), monomial(1)), den);
  for (std::size_t s = 0; s < ray_lengths.size(); ++s) {
    Poly partial = {Rat(1)};
    for (std::size_t r = 0; r < ray_lengths.size(); ++r) {
      if (r == s) continue;
      Poly d = monomial(ray_lengths[r]);
      d[0] = Rat(1);
      d[ray_lengths[r]] = Rat(-1);
      partial = poly_mul(partial, d);
    }
    Poly numer = monomial(1);  // t - t^p
    numer = poly_add(numer, poly_scale(Rat(-1), monomial(ray_lengths[s])));
    acc = poly_add(acc, poly_scale(Rat(-1), poly_mul(numer, partial)));
  }
  ScalarSeries base = poly_div_series(den, acc, trunc);
  bool de_type = c.kind == DynKind::FiniteADET && (c.family == Family::D || c.family == Family::E);
  if (!de_type) return base;
  if (c.coxeter_h % 2 != 0) throw DomainError("DE star with odd Coxeter number");
  int half = c.coxeter_h / 2;
  ScalarSeries out(trunc + 1, Rat(0));
  for (int k = 0; k <= trunc; ++k) {
    out[k] = base[k];
    if (k >= half) out[k] += base[k - half];
  }
  return out;
}

Rat kleinian_dim(int a, int b, int c) {
  Rat s = Rat(1, a) + Rat(1, b) + Rat(1, c) - Rat(1);
  if (sgn(s) <= 0) throw DomainError("not a finite Kleinian type");
  return Rat(2) / s;
}

bool koszul_criterion(const MatrixSeries& empirical, const Mat<Rat>& a) {
  std::size_t n = a.rows();
  Mat<Rat> id = Mat<Rat>::identity(n, Rat(1));
  for (int k = 0; k <= empirical.trunc; ++k) {
    // coefficient of t^k in H(t) (1 - A t + t^2)
    Mat<Rat> coef = empirical.coeff[k];
    if (k >= 1) coef = coef - empirical.coeff[k - 1] * a;
    if (k >= 2) coef = coef + empirical.coeff[k - 2];
    if (k == 0) {
      if (coef != id) return false;
    } else if (!coef.all_zero()) {
      return false;
    }
  }
  return true;
}

}  // namespace prepro
