#pragma once

#include <cstddef>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "prepro/errors.hpp"
#include "prepro/fp.hpp"
#include "prepro/rational.hpp"

namespace prepro {

// Dense matrix over an exact scalar type (Rat or Fp). Row reduction is plain
// Gauss-Jordan with leftmost-pivot selection: deterministic, no pivoting
// heuristics, which keeps chosen bases reproducible across runs.
template <class K>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

  static Mat identity(std::size_t n, const K& one) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }

  K& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const {
    Mat t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool all_zero() const {
    for (const auto& x : a_)
      if (!is_zero(x)) return false;
    return true;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<K> a_;
};

template <class K>
Mat<K> operator+(const Mat<K>& a, const Mat<K>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix shape mismatch in +");
  Mat<K> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

template <class K>
Mat<K> operator-(const Mat<K>& a, const Mat<K>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix shape mismatch in -");
  Mat<K> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

template <class K>
Mat<K> operator*(const Mat<K>& a, const Mat<K>& b) {
  if (a.cols() != b.rows()) throw InputError("matrix shape mismatch in *");
  Mat<K> r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const K& aik = a(i, k);
      if (is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (is_zero(b(k, j))) continue;
        r(i, j) += aik * b(k, j);
      }
    }
  return r;
}

template <class K>
Mat<K> operator*(const std::type_identity_t<K>& s, const Mat<K>& a) {
  Mat<K> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

template <class K>
K trace(const Mat<K>& a) {
  if (a.rows() != a.cols()) throw InputError("trace of non-square matrix");
  K t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

// In-place reduced row echelon form; returns the pivot columns in order.
template <class K>
std::vector<std::size_t> rref(Mat<K>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = col; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    K inv_pivot = m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j)
      if (!is_zero(m(row, j))) m(row, j) = m(row, j) / inv_pivot;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      K f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!is_zero(m(row, j))) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
std::size_t rank(Mat<K> m) {
  return rref(m).size();
}

// Solves A x = b exactly; free variables are set to zero. Returns nullopt if
// the system is inconsistent.
template <class K>
std::optional<std::vector<K>> solve(const Mat<K>& a, const std::vector<K>& b) {
  if (a.rows() != b.size()) throw InputError("solve: shape mismatch");
  Mat<K> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<K> x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& a) {
  if (a.rows() != a.cols()) throw InputError("inverse of non-square matrix");
  std::size_t n = a.rows();
  Mat<K> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
  }
  // Seed the right half with pivot-derived ones so no field context is needed.
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = 0;
    while (j < n && is_zero(a(i, j))) ++j;
    if (j == n) return std::nullopt;  // zero row
    aug(i, n + i) = a(i, j) / a(i, j);
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
  Mat<K> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

}  // namespace prepro
