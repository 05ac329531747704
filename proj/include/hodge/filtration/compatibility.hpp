#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hodge/filtration/filtration.hpp"

namespace hodge {

/// Cell of the n-hypercomplex, each coordinate in {-1, 0, 1}.
using CellIndex = std::vector<int>;

/// One row 0 -> X^{k-1_i} -> X^k -> X^{k+1_i} -> 0 that failed to be
/// exact, with the reason and the three dimensions.
struct RowFailure {
  CellIndex cell;          // k, with k_i = 0
  std::size_t direction;   // i
  std::string reason;      // "not-injective", "not-surjective", "composition-nonzero", "kernel-neq-image", "dimension"
  std::size_t dim_left = 0;
  std::size_t dim_middle = 0;
  std::size_t dim_right = 0;
};

struct CompatibilityReport {
  bool compatible = true;
  std::size_t rows_checked = 0;
  std::size_t points_checked = 0;
  /// Lattice point of the first failing family (filtrations only).
  std::optional<LatticePoint> failing_point;
  std::optional<std::vector<Rational>> failing_indices;
  std::optional<RowFailure> witness;
};

/// The forced n-hypercomplex of sub-objects A_1..A_n of A:
/// X^k = P_k / Q_k with P_k = A ∩ ⋂_{k_i=-1} A_i and
/// Q_k = Σ_{k_j=+1} (A_j ∩ P_k). All arrows are induced by the identity.
class Hypercomplex {
 public:
  struct Cell {
    QSubspace p, q;
  };

  Hypercomplex(const QSubspace& whole, const std::vector<QSubspace>& subs) : n_(subs.size()) {
    for (const auto& s : subs) {
      whole.check_same_ambient(s);
      require(whole.contains(s), ErrorCode::NotContained, "compatible_subobjects: sub-object not inside A");
    }
    std::size_t count = 1;
    for (std::size_t i = 0; i < n_; ++i) count *= 3;
    cells_.reserve(count);
    for (std::size_t code = 0; code < count; ++code) {
      CellIndex k = decode(code);
      QSubspace p = whole;
      for (std::size_t i = 0; i < n_; ++i)
        if (k[i] == -1) p = subspace_intersect(p, subs[i]);
      QSubspace q = QSubspace::zero(whole.ambient_dim());
      for (std::size_t j = 0; j < n_; ++j)
        if (k[j] == 1) q = subspace_sum(q, subspace_intersect(subs[j], p));
      cells_.push_back({std::move(p), std::move(q)});
    }
  }

  std::size_t arity() const { return n_; }
  const Cell& cell(const CellIndex& k) const { return cells_[encode(k)]; }
  QuotientPresentation<Rational> at(const CellIndex& k) const { return {cell(k).p, cell(k).q}; }

  /// Checks the row through k in direction i (requires k_i == 0). Every
  /// condition is read off the numerators and denominators in the ambient
  /// space: with a: X^l -> X^k and b: X^k -> X^r,
  ///   b a = 0        iff P_l ⊆ Q_r
  ///   a injective    iff P_l ∩ Q_k = Q_l
  ///   b surjective   iff P_k + Q_r ⊇ P_r
  ///   ker b = im a   iff P_k ∩ Q_r = P_l + Q_k.
  std::optional<RowFailure> check_row(const CellIndex& k, std::size_t i) const {
    const auto [l, m, r] = row(k, i);
    RowFailure f{k, i, "", l.p.dim() - l.q.dim(), m.p.dim() - m.q.dim(), r.p.dim() - r.q.dim()};
    if (!r.q.contains(l.p)) f.reason = "composition-nonzero";
    else if (subspace_intersect(l.p, m.q).dim() != l.q.dim()) f.reason = "not-injective";
    else if (!subspace_sum(m.p, r.q).contains(r.p)) f.reason = "not-surjective";
    else if (f.dim_left + f.dim_right != f.dim_middle) f.reason = "dimension";
    else if (subspace_intersect(m.p, r.q) != subspace_sum(l.p, m.q)) f.reason = "kernel-neq-image";
    if (f.reason.empty()) return std::nullopt;
    return f;
  }

  /// The same row check through explicit matrices of the induced maps on
  /// chosen bases of the subquotients.
  std::optional<RowFailure> check_row_by_maps(const CellIndex& k, std::size_t i) const {
    CellIndex left = k, right = k;
    left[i] = -1;
    right[i] = 1;
    const auto xl = at(left), xm = at(k), xr = at(right);
    const QMatrix id = QMatrix::identity(xm.top().ambient_dim());
    RowFailure f{k, i, "", xl.dim(), xm.dim(), xr.dim()};
    QMatrix a = induced_map(id, xl, xm);
    QMatrix b = induced_map(id, xm, xr);
    if (!(b * a).is_zero()) f.reason = "composition-nonzero";
    else if (rank(a) != xl.dim()) f.reason = "not-injective";
    else if (rank(b) != xr.dim()) f.reason = "not-surjective";
    else if (xl.dim() + xr.dim() != xm.dim()) f.reason = "dimension";
    else if (QSubspace::span(xm.dim(), null_space(b)) != image_of(a, QSubspace::full(xl.dim())))
      f.reason = "kernel-neq-image";
    if (f.reason.empty()) return std::nullopt;
    return f;
  }

  /// First failing row in lexicographic cell order, then by direction.
  std::optional<RowFailure> first_failure(std::size_t* rows_checked = nullptr) const {
    std::size_t count = cells_.size();
    for (std::size_t code = 0; code < count; ++code) {
      CellIndex k = decode(code);
      for (std::size_t i = 0; i < n_; ++i) {
        if (k[i] != 0) continue;
        if (rows_checked) ++*rows_checked;
        if (auto f = check_row(k, i)) return f;
      }
    }
    return std::nullopt;
  }

 private:
  // code digits are k_i + 1 in base 3, first coordinate most significant,
  // so increasing codes enumerate cells lexicographically
  CellIndex decode(std::size_t code) const {
    CellIndex k(n_);
    for (std::size_t i = n_; i-- > 0;) {
      k[i] = static_cast<int>(code % 3) - 1;
      code /= 3;
    }
    return k;
  }
  std::size_t encode(const CellIndex& k) const {
    std::size_t code = 0;
    for (std::size_t i = 0; i < n_; ++i) code = code * 3 + static_cast<std::size_t>(k[i] + 1);
    return code;
  }

  std::tuple<const Cell&, const Cell&, const Cell&> row(CellIndex k, std::size_t i) const {
    k[i] = -1;
    const Cell& l = cell(k);
    k[i] = 0;
    const Cell& m = cell(k);
    k[i] = 1;
    return {l, m, cell(k)};
  }

  std::size_t n_;
  std::vector<Cell> cells_;
};

/// Sub-objects A_1..A_n of A are compatible when the forced hypercomplex
/// has exact rows everywhere.
inline CompatibilityReport compatible_subobjects(const QSubspace& whole, const std::vector<QSubspace>& subs) {
  CompatibilityReport rep;
  Hypercomplex x(whole, subs);
  rep.points_checked = 1;
  if (auto f = x.first_failure(&rep.rows_checked)) {
    rep.compatible = false;
    rep.witness = std::move(f);
  }
  return rep;
}

/// Runs compatible_subobjects over every distinct family F^1_{l_1}, ...,
/// F^n_{l_n}; the witness is the lexicographically smallest failing point.
inline CompatibilityReport compatible_filtrations(const MultiFiltration& mf) {
  CompatibilityReport rep;
  if (mf.size() == 0) return rep;
  auto [lo, hi] = graded_box(mf);
  for (auto& l : lo) l -= 1;
  const QSubspace whole = QSubspace::full(mf.ambient_dim());
  bool done = false;
  for_each_point(lo, hi, [&](const LatticePoint& k) {
    if (done) return;
    std::vector<QSubspace> subs;
    for (std::size_t i = 0; i < mf.size(); ++i) subs.push_back(mf.at(i, k[i]));
    auto r = compatible_subobjects(whole, subs);
    rep.points_checked += 1;
    rep.rows_checked += r.rows_checked;
    if (!r.compatible) {
      rep.compatible = false;
      rep.failing_point = k;
      std::vector<Rational> idx;
      for (auto c : k) idx.push_back(mf.lattice().at(c));
      rep.failing_indices = idx;
      rep.witness = r.witness;
      done = true;
    }
  });
  return rep;
}

struct IteratedGraded {
  QuotientPresentation<Rational> piece;  // subquotient of the ambient space
  std::size_t iterated_dim = 0;
  std::size_t closed_form_dim = 0;
  bool agrees = true;
};

/// gr^{F_{σ(n)}} ... gr^{F_{σ(1)}} A computed by successive induced
/// filtrations, compared against the closed-form multigraded quotient.
/// `perm` lists filtration indices in the order they are applied.
inline IteratedGraded iterated_graded(const MultiFiltration& mf, const std::vector<Rational>& idx,
                                      const std::vector<std::size_t>& perm) {
  require(idx.size() == mf.size() && perm.size() == mf.size(), ErrorCode::DimensionMismatch,
          "iterated_graded: arity");
  std::vector<bool> seen(mf.size(), false);
  for (auto p : perm) {
    require(p < mf.size() && !seen[p], ErrorCode::InvalidArgument, "iterated_graded: not a permutation");
    seen[p] = true;
  }
  LatticePoint k;
  for (const auto& a : idx) k.push_back(mf.lattice().index_of(a));

  QSubspace top = QSubspace::full(mf.ambient_dim());
  QSubspace bottom = QSubspace::zero(mf.ambient_dim());
  for (auto j : perm) {
    // induced filtration on top/bottom: (F ∩ top + bottom) / bottom
    const QSubspace& f_at = mf.at(j, k[j]);
    const QSubspace& f_below = mf.at(j, k[j] - 1);
    QSubspace new_top = subspace_sum(subspace_intersect(f_at, top), bottom);
    QSubspace new_bottom = subspace_sum(subspace_intersect(f_below, top), bottom);
    top = std::move(new_top);
    bottom = std::move(new_bottom);
  }
  IteratedGraded out;
  out.piece = QuotientPresentation<Rational>(top, bottom);
  out.iterated_dim = out.piece.dim();
  out.closed_form_dim = graded_piece_at(mf, k).dim();
  out.agrees = out.iterated_dim == out.closed_form_dim;
  return out;
}

}  // namespace hodge
