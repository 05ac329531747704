#pragma once

#include <cstddef>
#include <vector>

#include "hodge/core/matrix.hpp"

// Independent reference computations used only by the tests. They avoid
// the library's echelon code on purpose.
namespace hodge::testing {

/// Clears denominators row by row, giving an integer matrix of equal rank.
inline std::vector<std::vector<Integer>> integer_rows(const QMatrix& m) {
  std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Integer d = denominator_of(m(i, j));
      l = l / boost::multiprecision::gcd(l, d) * d;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = numerator_of(m(i, j)) * (l / denominator_of(m(i, j)));
  }
  return out;
}

/// Fraction-free (Bareiss) elimination rank.
inline std::size_t bareiss_rank(const QMatrix& m) {
  auto a = integer_rows(m);
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

/// Determinant by cofactor expansion on small matrices.
inline Rational cofactor_det(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  if (n == 1) return m(0, 0);
  Rational d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    QMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    d += (j % 2 ? Rational(-1) : Rational(1)) * m(0, j) * cofactor_det(minor);
  }
  return d;
}

/// Sylvester: symmetric and every leading principal minor positive.
inline bool sylvester_positive(const QMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    QMatrix lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = m(i, j);
    if (cofactor_det(lead) <= 0) return false;
  }
  return true;
}

}  // namespace hodge::testing
