#pragma once

#include <cstddef>
#include <optional>

#include "hodge/core/matrix.hpp"

namespace hodge {

template <class T>
bool is_symmetric(const Matrix<T>& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

struct DefinitenessResult {
  bool symmetric = false;
  bool positive_definite = false;
  /// First non-positive pivot of the unpivoted symmetric elimination, i.e.
  /// the index k of the first leading principal minor that is not > 0.
  std::optional<std::size_t> failing_pivot;
};

/// Exact positive-definiteness test by symmetric Gaussian elimination
/// without pivoting (LDL^T). A zero or negative pivot means "not
/// definite"; its index is reported.
inline DefinitenessResult positive_definite(const QMatrix& gram) {
  DefinitenessResult res;
  res.symmetric = is_symmetric(gram);
  if (!res.symmetric) return res;
  QMatrix a = gram;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) <= 0) {
      res.failing_pivot = k;
      return res;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j)
        if (a(k, j) != 0) a(i, j) -= f * a(k, j);
    }
  }
  res.positive_definite = true;
  return res;
}

/// Gram matrix B K C^T of the bilinear form x^T K y on rows of B and C.
inline QMatrix gram(const QMatrix& rows_left, const QMatrix& form, const QMatrix& rows_right) {
  return rows_left * form * rows_right.transpose();
}

}  // namespace hodge
