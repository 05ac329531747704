#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hodge/filtration/filtration.hpp"

namespace hodge {

/// A Z^n-graded module over Q[x_1..x_n] presented on a finite box
/// [lo, hi] of multidegrees.
///
/// Outside the box the module is saturated: a piece with some k_i < lo_i is
/// 0, and for k_i >= hi_i multiplication by x_i is the identity (pieces
/// with k_i > hi_i are copies of the piece at hi_i).
class ReesModule {
 public:
  using DimFn = std::function<std::size_t(const LatticePoint&)>;
  /// map(i, k): matrix of x_i from piece(k) to piece(k + 1_i), for k in
  /// the box with k_i < hi_i.
  using MapFn = std::function<QMatrix(std::size_t, const LatticePoint&)>;

  ReesModule() = default;

  static ReesModule build(LatticePoint lo, LatticePoint hi, const DimFn& dims, const MapFn& maps) {
    ReesModule m;
    require(lo.size() == hi.size(), ErrorCode::DimensionMismatch, "rees module: box arity");
    for (std::size_t i = 0; i < lo.size(); ++i)
      require(lo[i] <= hi[i], ErrorCode::InvalidArgument, "rees module: empty box");
    m.lo_ = std::move(lo);
    m.hi_ = std::move(hi);
    m.dims_.resize(m.box_size());
    for_each_point(m.lo_, m.hi_, [&](const LatticePoint& k) { m.dims_[m.offset(k)] = dims(k); });
    m.maps_.assign(m.vars(), std::vector<QMatrix>(m.box_size()));
    for (std::size_t i = 0; i < m.vars(); ++i) {
      for_each_point(m.lo_, m.hi_, [&](const LatticePoint& k) {
        if (k[i] == m.hi_[i]) return;
        LatticePoint k1 = k;
        k1[i] += 1;
        QMatrix x = maps(i, k);
        require(x.rows() == m.dims_[m.offset(k1)] && x.cols() == m.dims_[m.offset(k)],
                ErrorCode::DimensionMismatch, "rees module: structure map shape");
        m.maps_[i][m.offset(k)] = std::move(x);
      });
    }
    m.validate();
    return m;
  }

  std::size_t vars() const { return lo_.size(); }
  const LatticePoint& lo() const { return lo_; }
  const LatticePoint& hi() const { return hi_; }

  std::size_t piece_dim(const LatticePoint& k) const {
    LatticePoint c;
    if (!clamp(k, c)) return 0;
    return dims_[offset(c)];
  }

  /// Matrix of x_i: piece(k) -> piece(k + 1_i) for any k in Z^n.
  QMatrix structure_map(std::size_t i, const LatticePoint& k) const {
    LatticePoint k1 = k;
    k1[i] += 1;
    const std::size_t ds = piece_dim(k);
    const std::size_t dt = piece_dim(k1);
    if (ds == 0 || dt == 0) return QMatrix(dt, ds);
    if (k[i] >= hi_[i]) return QMatrix::identity(ds);
    LatticePoint c;
    clamp(k, c);
    return maps_[i][offset(c)];
  }

  /// Embedding of each piece into a common ambient space, when the module
  /// comes from a multifiltration.
  const std::optional<std::vector<QSubspace>>& embedded_pieces() const { return pieces_; }
  std::optional<QSubspace> embedded_piece(const LatticePoint& k) const {
    if (!pieces_) return std::nullopt;
    LatticePoint c;
    if (!clamp(k, c)) return QSubspace::zero(ambient_);
    return (*pieces_)[offset(c)];
  }
  std::size_t ambient_dim() const { return ambient_; }

  /// Every commuting square x_j x_i = x_i x_j on the box.
  std::optional<std::string> commutation_defect() const {
    std::optional<std::string> defect;
    for (std::size_t i = 0; i < vars() && !defect; ++i)
      for (std::size_t j = i + 1; j < vars() && !defect; ++j)
        for_each_point(lo_, hi_, [&](const LatticePoint& k) {
          if (defect) return;
          LatticePoint ki = k, kj = k;
          ki[i] += 1;
          kj[j] += 1;
          if (structure_map(j, ki) * structure_map(i, k) != structure_map(i, kj) * structure_map(j, k))
            defect = "x_" + std::to_string(i + 1) + " and x_" + std::to_string(j + 1) + " do not commute at " +
                     point_string(k);
        });
    return defect;
  }

  static std::string point_string(const LatticePoint& k) {
    std::string s = "(";
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
    return s + ")";
  }

  friend bool operator==(const ReesModule& a, const ReesModule& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.dims_ == b.dims_ && a.maps_ == b.maps_;
  }

 private:
  friend ReesModule rees_of(const MultiFiltration& mf);

  std::size_t box_size() const {
    std::size_t s = 1;
    for (std::size_t i = 0; i < vars(); ++i) s *= static_cast<std::size_t>(hi_[i] - lo_[i] + 1);
    return s;
  }
  std::size_t offset(const LatticePoint& k) const {
    std::size_t o = 0;
    for (std::size_t i = 0; i < vars(); ++i)
      o = o * static_cast<std::size_t>(hi_[i] - lo_[i] + 1) + static_cast<std::size_t>(k[i] - lo_[i]);
    return o;
  }
  bool clamp(const LatticePoint& k, LatticePoint& out) const {
    require(k.size() == vars(), ErrorCode::DimensionMismatch, "rees module: multidegree arity");
    out = k;
    for (std::size_t i = 0; i < vars(); ++i) {
      if (k[i] < lo_[i]) return false;
      if (k[i] > hi_[i]) out[i] = hi_[i];
    }
    return true;
  }
  void validate() const {
    if (auto d = commutation_defect()) fail(ErrorCode::InvariantViolation, "rees module: " + *d);
  }

  LatticePoint lo_, hi_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<QMatrix>> maps_;
  std::optional<std::vector<QSubspace>> pieces_;
  std::size_t ambient_ = 0;
};

/// Rees module ⊕_k (∩_i F^i_{phi(k_i)}) x^k of a multifiltration, with
/// inclusions as structure maps, on the jump box widened by one on each
/// side.
inline ReesModule rees_of(const MultiFiltration& mf) {
  require(mf.size() > 0, ErrorCode::InvalidArgument, "rees_of: need at least one filtration");
  auto [lo, hi] = graded_box(mf);
  for (auto& l : lo) l -= 1;
  for (auto& h : hi) h += 1;
  // pieces first, then structure maps as inclusion matrices
  std::vector<QSubspace> pieces;
  ReesModule tmp;
  tmp.lo_ = lo;
  tmp.hi_ = hi;
  pieces.resize(tmp.box_size());
  for_each_point(lo, hi, [&](const LatticePoint& k) { pieces[tmp.offset(k)] = mf.intersection_at(k); });
  auto piece = [&](const LatticePoint& k) -> const QSubspace& { return pieces[tmp.offset(k)]; };
  ReesModule m = ReesModule::build(
      lo, hi, [&](const LatticePoint& k) { return piece(k).dim(); },
      [&](std::size_t i, const LatticePoint& k) {
        LatticePoint k1 = k;
        k1[i] += 1;
        const QSubspace& src = piece(k);
        const QSubspace& dst = piece(k1);
        QMatrix x(dst.dim(), src.dim());
        for (std::size_t c = 0; c < src.dim(); ++c) {
          auto coords = dst.coordinates(src.basis().row(c));
          for (std::size_t r = 0; r < dst.dim(); ++r) x(r, c) = coords[r];
        }
        return x;
      });
  m.pieces_ = std::move(pieces);
  m.ambient_ = mf.ambient_dim();
  return m;
}

}  // namespace hodge
