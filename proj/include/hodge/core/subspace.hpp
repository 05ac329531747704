#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hodge/core/matrix.hpp"

namespace hodge {

/// A linear subspace of T^n stored by its reduced row echelon basis.
///
/// The echelon basis is canonical, so two subspaces are equal exactly when
/// their stored bases are equal. Coordinates of a member vector in the
/// stored basis are read off at the pivot columns.
template <class T>
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t n) { return Subspace(n, Matrix<T>(0, n), {}); }
  static Subspace full(std::size_t n) {
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;
    return Subspace(n, Matrix<T>::identity(n), std::move(piv));
  }

  /// Span of the rows of `generators` (any number, possibly dependent).
  static Subspace from_rows(const Matrix<T>& generators) {
    auto e = rref(generators);
    return Subspace(generators.cols(), std::move(e.reduced), std::move(e.pivots));
  }

  static Subspace span(std::size_t n, const std::vector<Vector<T>>& vectors) {
    return from_rows(Matrix<T>::from_rows(n, vectors));
  }

  /// Span of the standard basis vectors with the given indices.
  static Subspace coordinate(std::size_t n, const std::vector<std::size_t>& indices) {
    std::vector<Vector<T>> vs;
    for (auto i : indices) {
      require(i < n, ErrorCode::DimensionMismatch, "coordinate index out of range");
      Vector<T> v(n, T(0));
      v[i] = T(1);
      vs.push_back(std::move(v));
    }
    return span(n, vs);
  }

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == n_; }

  /// Echelon basis, one vector per row.
  const Matrix<T>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<Vector<T>> basis_vectors() const { return basis_.row_vectors(); }

  /// Coordinates of v in the echelon basis; v must lie in the subspace.
  Vector<T> coordinates(const Vector<T>& v) const {
    Vector<T> c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  /// Residual of v after eliminating against the echelon basis; zero iff
  /// v belongs to the subspace.
  Vector<T> reduce(Vector<T> v) const {
    require(v.size() == n_, ErrorCode::DimensionMismatch, "vector length vs ambient dimension");
    for (std::size_t i = 0; i < dim(); ++i) {
      const T f = v[pivots_[i]];
      if (f == T(0)) continue;
      for (std::size_t j = pivots_[i]; j < n_; ++j)
        if (basis_(i, j) != T(0)) v[j] -= f * basis_(i, j);
    }
    return v;
  }

  bool contains(const Vector<T>& v) const {
    for (const auto& x : reduce(v))
      if (x != T(0)) return false;
    return true;
  }

  bool contains(const Subspace& other) const {
    check_same_ambient(other);
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  /// Rows spanning {y : <b, y> = 0 for every basis vector b}.
  Subspace annihilator() const {
    if (dim() == 0) return full(n_);
    return span(n_, null_space(basis_));
  }

  void check_same_ambient(const Subspace& other) const {
    require(n_ == other.n_, ErrorCode::DimensionMismatch,
            "ambient dimension mismatch: " + std::to_string(n_) + " vs " + std::to_string(other.n_));
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  Subspace(std::size_t n, Matrix<T> basis, std::vector<std::size_t> pivots)
      : n_(n), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  std::size_t n_ = 0;
  Matrix<T> basis_;
  std::vector<std::size_t> pivots_;
};

using QSubspace = Subspace<Rational>;

template <class T>
Subspace<T> subspace_sum(const Subspace<T>& u, const Subspace<T>& w) {
  u.check_same_ambient(w);
  if (u.is_zero()) return w;
  if (w.is_zero()) return u;
  return Subspace<T>::from_rows(vstack(u.basis(), w.basis()));
}

template <class T>
Subspace<T> subspace_intersect(const Subspace<T>& u, const Subspace<T>& w) {
  u.check_same_ambient(w);
  if (u.is_zero() || w.is_full()) return u;
  if (w.is_zero() || u.is_full()) return w;
  if (u.contains(w)) return w;
  if (w.contains(u)) return u;
  // (U ∩ W)^⊥ = U^⊥ + W^⊥
  return subspace_sum(u.annihilator(), w.annihilator()).annihilator();
}

/// Image f(U) for f: T^n -> T^m given as an m x n matrix.
template <class T>
Subspace<T> image_of(const Matrix<T>& f, const Subspace<T>& u) {
  require(f.cols() == u.ambient_dim(), ErrorCode::DimensionMismatch, "image: map/subspace shape");
  if (u.is_zero()) return Subspace<T>::zero(f.rows());
  return Subspace<T>::from_rows((f * u.basis().transpose()).transpose());
}

/// Preimage f^{-1}(W) = {x : f x ∈ W}.
template <class T>
Subspace<T> preimage_of(const Matrix<T>& f, const Subspace<T>& w) {
  require(f.rows() == w.ambient_dim(), ErrorCode::DimensionMismatch, "preimage: map/subspace shape");
  if (w.is_full()) return Subspace<T>::full(f.cols());
  Matrix<T> ann = w.annihilator().basis();  // rows y with y·w = 0
  Matrix<T> cond = ann * f;
  return Subspace<T>::span(f.cols(), null_space(cond));
}

template <class T>
struct KernelImage {
  Subspace<T> kernel;
  Subspace<T> image;
};

/// Exact kernel (in the source) and image (in the target) of a linear map.
template <class T>
KernelImage<T> map_kernel_image(const Matrix<T>& m) {
  return {Subspace<T>::span(m.cols(), null_space(m)), image_of(m, Subspace<T>::full(m.cols()))};
}

template <class T>
bool maps_into(const Matrix<T>& f, const Subspace<T>& source, const Subspace<T>& target) {
  return target.contains(image_of(f, source));
}

/// Matrix of f restricted to an invariant subspace, in the echelon
/// coordinates of that subspace.
template <class T>
Matrix<T> restrict_to(const Matrix<T>& f, const Subspace<T>& u) {
  require(f.is_square() && f.rows() == u.ambient_dim(), ErrorCode::DimensionMismatch, "restrict: shape");
  Matrix<T> r(u.dim(), u.dim());
  for (std::size_t j = 0; j < u.dim(); ++j) {
    Vector<T> img = f.apply(u.basis().row(j));
    require(u.contains(img), ErrorCode::NotPreserved, "restrict: subspace is not invariant");
    auto c = u.coordinates(img);
    for (std::size_t i = 0; i < u.dim(); ++i) r(i, j) = c[i];
  }
  return r;
}

/// Embeds a subspace given in the echelon coordinates of `u` back into the
/// ambient space of `u`.
template <class T>
Subspace<T> embed_from(const Subspace<T>& u, const Subspace<T>& in_coords) {
  require(in_coords.ambient_dim() == u.dim(), ErrorCode::DimensionMismatch, "embed: coordinate dimension");
  if (in_coords.is_zero()) return Subspace<T>::zero(u.ambient_dim());
  return Subspace<T>::from_rows(in_coords.basis() * u.basis());
}

/// V/U for U ⊆ V ⊆ T^n: representatives complementing U in V and a
/// reduction map sending members of V to quotient coordinates.
template <class T>
class QuotientPresentation {
 public:
  QuotientPresentation() = default;

  QuotientPresentation(Subspace<T> top, Subspace<T> bottom) : top_(std::move(top)), bottom_(std::move(bottom)) {
    require(top_.contains(bottom_), ErrorCode::NotContained, "quotient: denominator not contained in numerator");
    const std::size_t n = top_.ambient_dim();
    // complete the echelon basis of U with echelon rows of V
    Subspace<T> acc = bottom_;
    std::vector<Vector<T>> reps;
    for (std::size_t i = 0; i < top_.dim() && acc.dim() < top_.dim(); ++i) {
      Vector<T> v = top_.basis().row(i);
      if (acc.contains(v)) continue;
      reps.push_back(v);
      acc = subspace_sum(acc, Subspace<T>::span(n, {v}));
    }
    reps_ = Matrix<T>::from_rows(n, reps);
    // coordinates in V's echelon basis: c_j = v[pivot_j]; express [reps; U]
    const std::size_t dv = top_.dim();
    Matrix<T> change(dv, dv);
    for (std::size_t r = 0; r < reps.size(); ++r)
      for (std::size_t j = 0; j < dv; ++j) change(r, j) = reps[r][top_.pivots()[j]];
    for (std::size_t r = 0; r < bottom_.dim(); ++r)
      for (std::size_t j = 0; j < dv; ++j) change(reps.size() + r, j) = bottom_.basis()(r, top_.pivots()[j]);
    auto inv = inverse(change);
    require(inv.has_value(), ErrorCode::Internal, "quotient: basis change not invertible");
    // v = sum_j c_j vbasis_j and c = a * change  =>  a = c * change^{-1}
    reduce_ = Matrix<T>(reps.size(), n);
    for (std::size_t q = 0; q < reps.size(); ++q)
      for (std::size_t j = 0; j < dv; ++j) reduce_(q, top_.pivots()[j]) = (*inv)(j, q);
  }

  std::size_t dim() const { return reps_.rows(); }
  const Subspace<T>& top() const { return top_; }
  const Subspace<T>& bottom() const { return bottom_; }
  /// Representatives of a quotient basis, one per row.
  const Matrix<T>& representatives() const { return reps_; }
  /// dim() x n matrix; applied to a member of top() it gives quotient
  /// coordinates (members of bottom() map to zero).
  const Matrix<T>& reduction() const { return reduce_; }

  Vector<T> coordinates(const Vector<T>& v) const {
    require(top_.contains(v), ErrorCode::NotContained, "quotient: vector outside the numerator");
    return reduce_.apply(v);
  }

 private:
  Subspace<T> top_;
  Subspace<T> bottom_;
  Matrix<T> reps_;
  Matrix<T> reduce_;
};

/// Matrix of the map source -> target induced by f on quotient coordinates.
/// Throws when f does not carry the numerator/denominator of the source
/// into those of the target.
template <class T>
Matrix<T> induced_map(const Matrix<T>& f, const QuotientPresentation<T>& source,
                      const QuotientPresentation<T>& target) {
  require(maps_into(f, source.top(), target.top()), ErrorCode::NotPreserved, "induced map: numerators");
  require(maps_into(f, source.bottom(), target.bottom()), ErrorCode::NotPreserved, "induced map: denominators");
  if (source.dim() == 0) return Matrix<T>(target.dim(), 0);
  return target.reduction() * f * source.representatives().transpose();
}

}  // namespace hodge
