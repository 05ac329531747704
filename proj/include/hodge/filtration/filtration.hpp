#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hodge/core/subspace.hpp"

namespace hodge {

using LatticePoint = std::vector<std::int64_t>;

/// Index set S + Z with S ⊂ [0,1) finite and 0 ∈ S, together with the
/// order-preserving bijection phi: Z -> S + Z with phi(0) = 0.
class IndexLattice {
 public:
  IndexLattice() : offsets_{Rational(0)} {}

  /// Smallest lattice containing every given index.
  static IndexLattice covering(const std::vector<Rational>& indices) {
    IndexLattice lat;
    for (const auto& a : indices) lat.offsets_.push_back(frac_of(a));
    std::sort(lat.offsets_.begin(), lat.offsets_.end());
    lat.offsets_.erase(std::unique(lat.offsets_.begin(), lat.offsets_.end()), lat.offsets_.end());
    return lat;
  }

  const std::vector<Rational>& offsets() const { return offsets_; }
  std::int64_t period() const { return static_cast<std::int64_t>(offsets_.size()); }

  /// phi(k).
  Rational at(std::int64_t k) const {
    const std::int64_t m = period();
    std::int64_t q = k >= 0 ? k / m : -((-k + m - 1) / m);
    std::int64_t r = k - q * m;
    return Rational(q) + offsets_[static_cast<std::size_t>(r)];
  }

  bool contains(const Rational& a) const {
    return std::binary_search(offsets_.begin(), offsets_.end(), frac_of(a));
  }

  /// phi^{-1}(a); throws when a is not in S + Z.
  std::int64_t index_of(const Rational& a) const {
    Rational f = frac_of(a);
    auto it = std::lower_bound(offsets_.begin(), offsets_.end(), f);
    if (it == offsets_.end() || *it != f)
      fail(ErrorCode::IndexOutsideLattice, "index " + format_rational(a) + " is outside the declared lattice");
    auto r = static_cast<std::int64_t>(it - offsets_.begin());
    return static_cast<std::int64_t>(floor_of(a)) * period() + r;
  }

  friend bool operator==(const IndexLattice&, const IndexLattice&) = default;

 private:
  std::vector<Rational> offsets_;
};

/// Finite increasing exhaustive filtration F_• of Q^n with rational indices.
///
/// Only the jumps are stored: F_a is the space of the last step with
/// index <= a, and 0 below the first step. The last step is the whole
/// space.
class Filtration {
 public:
  struct Step {
    Rational index;
    QSubspace space;
    friend bool operator==(const Step&, const Step&) = default;
  };

  Filtration() = default;

  /// Validates that indices are strictly increasing, the spaces are
  /// increasing and the last one is the ambient space; repeated spaces and
  /// leading zero spaces are dropped.
  static Filtration from_steps(std::size_t n, std::vector<Step> steps) {
    Filtration f;
    f.n_ = n;
    f.zero_ = QSubspace::zero(n);
    for (std::size_t i = 0; i < steps.size(); ++i) {
      require(steps[i].space.ambient_dim() == n, ErrorCode::DimensionMismatch, "filtration step ambient dimension");
      if (i > 0) {
        require(steps[i - 1].index < steps[i].index, ErrorCode::InvariantViolation,
                "filtration indices must be strictly increasing");
        require(steps[i].space.contains(steps[i - 1].space), ErrorCode::InvariantViolation,
                "filtration is not increasing at index " + format_rational(steps[i].index));
      }
    }
    if (n > 0) {
      require(!steps.empty() && steps.back().space.is_full(), ErrorCode::InvariantViolation,
              "filtration is not exhaustive (last step must be the whole space)");
    }
    for (auto& s : steps) {
      const QSubspace& prev = f.steps_.empty() ? f.zero_ : f.steps_.back().space;
      if (s.space == prev) continue;
      f.steps_.push_back(std::move(s));
    }
    return f;
  }

  /// 0 below `index`, everything from `index` on.
  static Filtration trivial(std::size_t n, const Rational& index = Rational(0)) {
    return from_steps(n, {{index, QSubspace::full(n)}});
  }

  /// 0 ⊂ U ⊂ Q^n with U at `low` and the whole space at `high`.
  static Filtration two_step(const QSubspace& u, const Rational& low, const Rational& high) {
    const std::size_t n = u.ambient_dim();
    return from_steps(n, {{low, u}, {high, QSubspace::full(n)}});
  }

  std::size_t ambient_dim() const { return n_; }
  const std::vector<Step>& steps() const { return steps_; }

  std::vector<Rational> jumps() const {
    std::vector<Rational> out;
    for (const auto& s : steps_) out.push_back(s.index);
    return out;
  }

  /// F_a.
  const QSubspace& at(const Rational& a) const {
    const QSubspace* cur = &zero_;
    for (const auto& s : steps_) {
      if (s.index > a) break;
      cur = &s.space;
    }
    return *cur;
  }

  /// F_{<a}, the union of F_b over b < a.
  const QSubspace& below(const Rational& a) const {
    const QSubspace* cur = &zero_;
    for (const auto& s : steps_) {
      if (s.index >= a) break;
      cur = &s.space;
    }
    return *cur;
  }

  /// gr_a = F_a / F_{<a}.
  QuotientPresentation<Rational> graded(const Rational& a) const { return {at(a), below(a)}; }

  /// The filtration G with G_{a + by} = F_a.
  Filtration shifted(const Rational& by) const {
    Filtration g = *this;
    for (auto& s : g.steps_) s.index += by;
    return g;
  }

  /// N(F_a) ⊆ F_{a + shift} for every a.
  bool is_preserved_by(const QMatrix& op, const Rational& shift = Rational(0)) const {
    for (const auto& s : steps_)
      if (!maps_into(op, s.space, at(s.index + shift))) return false;
    return true;
  }

  friend bool operator==(const Filtration& a, const Filtration& b) { return a.n_ == b.n_ && a.steps_ == b.steps_; }
  friend bool operator!=(const Filtration& a, const Filtration& b) { return !(a == b); }

 private:
  std::size_t n_ = 0;
  QSubspace zero_ = QSubspace::zero(0);
  std::vector<Step> steps_;
};

/// n filtrations of the same space, sharing one index lattice.
class MultiFiltration {
 public:
  MultiFiltration() = default;

  MultiFiltration(std::size_t n, std::vector<Filtration> filtrations) : n_(n), filtrations_(std::move(filtrations)) {
    std::vector<Rational> all;
    for (const auto& f : filtrations_) {
      require(f.ambient_dim() == n_, ErrorCode::DimensionMismatch, "multifiltration: ambient dimensions differ");
      for (const auto& j : f.jumps()) all.push_back(j);
    }
    lattice_ = IndexLattice::covering(all);
  }

  std::size_t ambient_dim() const { return n_; }
  std::size_t size() const { return filtrations_.size(); }
  const Filtration& operator[](std::size_t i) const { return filtrations_[i]; }
  const std::vector<Filtration>& filtrations() const { return filtrations_; }
  const IndexLattice& lattice() const { return lattice_; }

  /// Lattice coordinates [lo, hi] of the first jump and of the jump onto
  /// the whole space; F is 0 below lo and everything from hi on.
  std::pair<std::int64_t, std::int64_t> bounds(std::size_t i) const {
    const auto& steps = filtrations_[i].steps();
    if (steps.empty()) return {0, 0};
    return {lattice_.index_of(steps.front().index), lattice_.index_of(steps.back().index)};
  }

  const QSubspace& at(std::size_t i, std::int64_t k) const { return filtrations_[i].at(lattice_.at(k)); }

  /// F^1_{phi(k_1)} ∩ ... ∩ F^n_{phi(k_n)}.
  QSubspace intersection_at(const LatticePoint& k) const {
    require(k.size() == size(), ErrorCode::DimensionMismatch, "lattice point arity");
    QSubspace acc = QSubspace::full(n_);
    for (std::size_t i = 0; i < size() && !acc.is_zero(); ++i) acc = subspace_intersect(acc, at(i, k[i]));
    return acc;
  }

  MultiFiltration subfamily(const std::vector<std::size_t>& which) const {
    std::vector<Filtration> fs;
    for (auto i : which) fs.push_back(filtrations_.at(i));
    return MultiFiltration(n_, std::move(fs));
  }

  friend bool operator==(const MultiFiltration& a, const MultiFiltration& b) {
    return a.n_ == b.n_ && a.filtrations_ == b.filtrations_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Filtration> filtrations_;
  IndexLattice lattice_;
};

/// Multi-graded piece (∩_i F^i_{k_i}) / Σ_j (∩_i F^i_{k_i - δ_ij}) at a
/// lattice point.
inline QuotientPresentation<Rational> graded_piece_at(const MultiFiltration& mf, const LatticePoint& k) {
  QSubspace top = mf.intersection_at(k);
  QSubspace bottom = QSubspace::zero(mf.ambient_dim());
  for (std::size_t j = 0; j < mf.size(); ++j) {
    LatticePoint km = k;
    km[j] -= 1;
    bottom = subspace_sum(bottom, mf.intersection_at(km));
  }
  return {top, bottom};
}

/// Same as graded_piece_at, with rational indices (each must lie in the
/// lattice of mf).
inline QuotientPresentation<Rational> graded_piece(const MultiFiltration& mf, const std::vector<Rational>& idx) {
  require(idx.size() == mf.size(), ErrorCode::DimensionMismatch, "graded_piece: index arity");
  LatticePoint k;
  for (const auto& a : idx) k.push_back(mf.lattice().index_of(a));
  return graded_piece_at(mf, k);
}

/// Iterates over every point of the box [lo, hi] (inclusive), first
/// coordinate slowest, i.e. in lexicographic order.
template <class F>
void for_each_point(const LatticePoint& lo, const LatticePoint& hi, F&& visit) {
  const std::size_t n = lo.size();
  for (std::size_t i = 0; i < n; ++i)
    if (lo[i] > hi[i]) return;
  LatticePoint k = lo;
  while (true) {
    visit(static_cast<const LatticePoint&>(k));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (k[i] < hi[i]) {
        ++k[i];
        break;
      }
      k[i] = lo[i];
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

/// Lattice box covering every distinct graded piece of mf.
inline std::pair<LatticePoint, LatticePoint> graded_box(const MultiFiltration& mf) {
  LatticePoint lo, hi;
  for (std::size_t i = 0; i < mf.size(); ++i) {
    auto [l, h] = mf.bounds(i);
    lo.push_back(l);
    hi.push_back(h);
  }
  return {lo, hi};
}

}  // namespace hodge
