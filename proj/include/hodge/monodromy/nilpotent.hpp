#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hodge/core/subspace.hpp"

namespace hodge {

/// A square matrix certified nilpotent on construction.
class NilpotentOperator {
 public:
  NilpotentOperator() = default;

  explicit NilpotentOperator(QMatrix m) : m_(std::move(m)) {
    require(m_.is_square(), ErrorCode::DimensionMismatch, "nilpotent operator must be square, got " + m_.shape());
    powers_.push_back(QMatrix::identity(m_.rows()));
    while (!powers_.back().is_zero()) {
      require(powers_.size() <= m_.rows(), ErrorCode::NotNilpotent, "operator is not nilpotent");
      powers_.push_back(powers_.back() * m_);
    }
    if (powers_.size() == 1) powers_.push_back(powers_.back());  // 0x0 operator
  }

  static NilpotentOperator zero(std::size_t n) { return NilpotentOperator(QMatrix(n, n)); }

  const QMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }

  /// Smallest e with N^e = 0 (the zero map has exponent 1).
  std::size_t exponent() const { return powers_.size() - 1; }
  /// Largest j with N^j != 0, i.e. exponent - 1.
  std::size_t degree() const { return exponent() - 1; }

  /// N^j; zero for j >= exponent.
  QMatrix power(std::size_t j) const { return j < powers_.size() ? powers_[j] : QMatrix(dim(), dim()); }

  QSubspace kernel_of_power(std::size_t j) const {
    if (j >= exponent()) return QSubspace::full(dim());
    return QSubspace::span(dim(), null_space(power(j)));
  }
  QSubspace image_of_power(std::size_t j) const { return image_of(power(j), QSubspace::full(dim())); }

  /// Block sizes, largest first: the number of blocks of size >= j is
  /// rank N^{j-1} - rank N^j.
  std::vector<std::size_t> jordan_type() const {
    std::vector<std::size_t> ranks;
    for (std::size_t j = 0; j <= exponent(); ++j) ranks.push_back(rank(power(j)));
    std::vector<std::size_t> blocks;
    for (std::size_t size = exponent(); size >= 1; --size) {
      const std::size_t at_least = ranks[size - 1] - ranks[size];
      const std::size_t above = size < exponent() ? ranks[size] - ranks[size + 1] : 0;
      for (std::size_t b = 0; b < at_least - above; ++b) blocks.push_back(size);
    }
    return blocks;
  }

  friend bool operator==(const NilpotentOperator& a, const NilpotentOperator& b) { return a.m_ == b.m_; }

 private:
  QMatrix m_;
  std::vector<QMatrix> powers_;
};

inline void require_commuting(const std::vector<NilpotentOperator>& ns) {
  for (std::size_t i = 0; i < ns.size(); ++i) {
    require(ns[i].dim() == ns.front().dim(), ErrorCode::DimensionMismatch, "operators act on different spaces");
    for (std::size_t j = i + 1; j < ns.size(); ++j)
      require(commutator(ns[i].matrix(), ns[j].matrix()).is_zero(), ErrorCode::NotCommuting,
              "N_" + std::to_string(i + 1) + " and N_" + std::to_string(j + 1) + " do not commute");
  }
}

}  // namespace hodge
