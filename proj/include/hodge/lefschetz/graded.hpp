#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hodge/monodromy/monodromy_filtration.hpp"

namespace hodge {

using Multidegree = std::vector<std::int64_t>;

inline std::string multidegree_string(const Multidegree& l) {
  std::string s = "(";
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
  return s + ")";
}

/// Q^n = ⊕_l H_l over finitely many multidegrees l ∈ Z^p.
class GradedSpace {
 public:
  GradedSpace() = default;

  GradedSpace(std::size_t ambient, std::size_t slots, std::map<Multidegree, QSubspace> pieces)
      : n_(ambient), p_(slots) {
    std::size_t total = 0;
    QSubspace acc = QSubspace::zero(n_);
    std::vector<QVector> cols;
    for (auto& [l, s] : pieces) {
      require(l.size() == p_, ErrorCode::DimensionMismatch, "graded space: multidegree arity");
      require(s.ambient_dim() == n_, ErrorCode::DimensionMismatch, "graded space: piece ambient dimension");
      if (s.is_zero()) continue;
      total += s.dim();
      acc = subspace_sum(acc, s);
      for (const auto& v : s.basis_vectors()) cols.push_back(v);
      pieces_.emplace(l, std::move(s));
    }
    require(total == n_ && acc.is_full(), ErrorCode::InvariantViolation,
            "graded space: pieces do not form a direct sum decomposition");
    adapted_ = QMatrix::from_columns(n_, cols);
    adapted_inv_ = n_ ? *inverse(adapted_) : QMatrix(0, 0);
  }

  std::size_t ambient_dim() const { return n_; }
  std::size_t slots() const { return p_; }
  const std::map<Multidegree, QSubspace>& pieces() const { return pieces_; }

  QSubspace piece(const Multidegree& l) const {
    auto it = pieces_.find(l);
    return it == pieces_.end() ? QSubspace::zero(n_) : it->second;
  }

  /// Projection onto H_l along the other pieces.
  QMatrix projector(const Multidegree& l) const {
    QMatrix d(n_, n_);
    std::size_t off = 0;
    for (const auto& [m, s] : pieces_) {
      if (m == l)
        for (std::size_t i = 0; i < s.dim(); ++i) d(off + i, off + i) = 1;
      off += s.dim();
    }
    return adapted_ * d * adapted_inv_;
  }

  /// Operator acting on H_l by the scalar l_slot.
  QMatrix grading_operator(std::size_t slot) const {
    QMatrix d(n_, n_);
    std::size_t off = 0;
    for (const auto& [m, s] : pieces_) {
      for (std::size_t i = 0; i < s.dim(); ++i) d(off + i, off + i) = Rational(m[slot]);
      off += s.dim();
    }
    return adapted_ * d * adapted_inv_;
  }

  /// Columns: echelon bases of the pieces in increasing multidegree order.
  const QMatrix& adapted_basis() const { return adapted_; }
  const QMatrix& adapted_basis_inverse() const { return adapted_inv_; }

  /// Same decomposition with multidegrees transformed by f.
  template <class F>
  GradedSpace regraded(std::size_t slots, F&& f) const {
    std::map<Multidegree, QSubspace> out;
    for (const auto& [l, s] : pieces_) {
      Multidegree m = f(l);
      auto it = out.find(m);
      if (it == out.end()) out.emplace(m, s);
      else it->second = subspace_sum(it->second, s);
    }
    return GradedSpace(n_, slots, std::move(out));
  }

  friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
    return a.n_ == b.n_ && a.p_ == b.p_ && a.pieces_ == b.pieces_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t p_ = 0;
  std::map<Multidegree, QSubspace> pieces_;
  QMatrix adapted_, adapted_inv_;
};

inline Multidegree unit_shift(const Multidegree& l, std::size_t slot, std::int64_t by) {
  Multidegree m = l;
  m[slot] += by;
  return m;
}

/// (H, N_1..N_p, k): N_i of degree -2 in slot i, pairwise commuting, and a
/// bilinear form k(x, y) = x^T K y pairing H_l with H_{-l} only.
struct GradedBilinearStructure {
  GradedSpace space;
  std::vector<NilpotentOperator> ns;
  QMatrix form;
  std::int64_t center = 0;

  std::size_t slots() const { return space.slots(); }
  std::size_t dim() const { return space.ambient_dim(); }

  /// Checks the structural invariants; returns the first violation.
  std::optional<std::string> defect() const {
    if (ns.size() != slots()) return "number of operators differs from the number of gradings";
    if (form.rows() != dim() || form.cols() != dim()) return "form has shape " + form.shape();
    for (std::size_t i = 0; i < ns.size(); ++i) {
      if (ns[i].dim() != dim()) return "N_" + std::to_string(i + 1) + " acts on another space";
      for (const auto& [l, s] : space.pieces())
        if (!maps_into(ns[i].matrix(), s, space.piece(unit_shift(l, i, -2))))
          return "N_" + std::to_string(i + 1) + " does not map H" + multidegree_string(l) + " to H" +
                 multidegree_string(unit_shift(l, i, -2));
      for (std::size_t j = i + 1; j < ns.size(); ++j)
        if (!commutator(ns[i].matrix(), ns[j].matrix()).is_zero())
          return "N_" + std::to_string(i + 1) + " and N_" + std::to_string(j + 1) + " do not commute";
    }
    for (const auto& [l, s] : space.pieces())
      for (const auto& [m, t] : space.pieces()) {
        Multidegree neg = l;
        for (auto& x : neg) x = -x;
        if (m == neg) continue;
        if (!gram_is_zero(s, t)) return "form pairs H" + multidegree_string(l) + " with H" + multidegree_string(m);
      }
    return std::nullopt;
  }

  void validate() const {
    if (auto d = defect()) fail(ErrorCode::InvariantViolation, "graded structure: " + *d);
  }

  friend bool operator==(const GradedBilinearStructure& a, const GradedBilinearStructure& b) {
    return a.space == b.space && a.ns == b.ns && a.form == b.form && a.center == b.center;
  }

 private:
  bool gram_is_zero(const QSubspace& s, const QSubspace& t) const {
    return (s.basis() * form * t.basis().transpose()).is_zero();
  }
};

/// Validated constructor.
inline GradedBilinearStructure make_structure(GradedSpace space, std::vector<NilpotentOperator> ns, QMatrix form,
                                              std::int64_t center = 0) {
  GradedBilinearStructure g{std::move(space), std::move(ns), std::move(form), center};
  g.validate();
  return g;
}

/// Change of coordinates x = T x': operators T^{-1} N T, form T^T K T,
/// pieces T^{-1} H_l.
inline GradedBilinearStructure change_basis(const GradedBilinearStructure& g, const QMatrix& t) {
  auto tinv = inverse(t);
  require(tinv.has_value(), ErrorCode::InvalidArgument, "change of basis is not invertible");
  std::map<Multidegree, QSubspace> pieces;
  for (const auto& [l, s] : g.space.pieces()) pieces.emplace(l, image_of(*tinv, s));
  std::vector<NilpotentOperator> ns;
  for (const auto& n : g.ns) ns.emplace_back(*tinv * n.matrix() * t);
  return make_structure(GradedSpace(g.dim(), g.slots(), std::move(pieces)), std::move(ns), t.transpose() * g.form * t,
                        g.center);
}

}  // namespace hodge
