#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hodge/monodromy/nilpotent.hpp"

namespace hodge {

using RationalIndex = std::vector<Rational>;

inline std::string index_string(const RationalIndex& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + format_rational(a[i]);
  return s + ")";
}

/// Graded pieces E_α, α ∈ [-1,0)^p, each with commuting nilpotent
/// N_1..N_p standing for t_i∂_{t_i} - α_i.
class MonodromicModule {
 public:
  MonodromicModule() = default;
  explicit MonodromicModule(std::size_t p) : p_(p) {}

  void add(const RationalIndex& alpha, std::vector<NilpotentOperator> ns) {
    require(alpha.size() == p_, ErrorCode::DimensionMismatch, "monodromic module: index arity");
    for (const auto& a : alpha)
      require(a >= -1 && a < 0, ErrorCode::InvalidArgument, "monodromic module: index " + format_rational(a) +
                                                                " outside [-1,0)");
    require(ns.size() == p_, ErrorCode::DimensionMismatch, "monodromic module: need one operator per coordinate");
    require_commuting(ns);
    pieces_[alpha] = std::move(ns);
  }

  std::size_t coordinates() const { return p_; }
  const std::map<RationalIndex, std::vector<NilpotentOperator>>& pieces() const { return pieces_; }

  const std::vector<NilpotentOperator>& at(const RationalIndex& alpha) const {
    auto it = pieces_.find(alpha);
    require(it != pieces_.end(), ErrorCode::InvalidArgument, "no graded piece at " + index_string(alpha));
    return it->second;
  }
  std::size_t piece_dim(const RationalIndex& alpha) const { return at(alpha).front().dim(); }

  friend bool operator==(const MonodromicModule& a, const MonodromicModule& b) {
    return a.p_ == b.p_ && a.pieces_ == b.pieces_;
  }

 private:
  std::size_t p_ = 0;
  std::map<RationalIndex, std::vector<NilpotentOperator>> pieces_;
};

/// Shift e_l -> e_{l-1} (e_0 -> 0) on span{e_0..e_k}.
inline QMatrix nilsson_shift(std::size_t k) {
  QMatrix s(k + 1, k + 1);
  for (std::size_t l = 1; l <= k; ++l) s(l - 1, l) = 1;
  return s;
}

/// The graded model of the Nilsson tensor product: every corner of the
/// p-cube is a copy of W = E_α ⊗ span{e_l : 0 <= l <= k}, and the arrow in
/// direction i is A_i(m ⊗ e_l) = N_i m ⊗ e_l - m ⊗ e_{l-1_i}. Basis order
/// is E-index first, then l_1, ..., l_p.
struct DoubleComplexModel {
  RationalIndex alpha;
  std::vector<std::size_t> k;
  std::size_t e_dim = 0;
  std::vector<QMatrix> a;

  std::size_t dim() const {
    std::size_t d = e_dim;
    for (auto x : k) d *= x + 1;
    return d;
  }
  /// Corners of the cube, each of dimension dim(), labelled by {-1,0}^p.
  std::vector<std::vector<int>> corners() const {
    std::vector<std::vector<int>> out;
    const std::size_t p = k.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << p); ++mask) {
      std::vector<int> c(p);
      for (std::size_t i = 0; i < p; ++i) c[i] = (mask >> (p - 1 - i) & 1) ? 0 : -1;
      out.push_back(c);
    }
    return out;
  }
  /// Commuting squares A_i A_j = A_j A_i.
  bool squares_commute() const {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j)
        if (a[i] * a[j] != a[j] * a[i]) return false;
    return true;
  }
};

namespace detail {

/// I_{d_0} ⊗ ... ⊗ m ⊗ ... ⊗ I_{d_r}, with m in position `at`.
inline QMatrix embed_factor(const std::vector<std::size_t>& dims, std::size_t at, const QMatrix& m) {
  QMatrix out = QMatrix::identity(1);
  for (std::size_t f = 0; f < dims.size(); ++f) out = kronecker(out, f == at ? m : QMatrix::identity(dims[f]));
  return out;
}

inline std::vector<std::size_t> factor_dims(std::size_t e_dim, const std::vector<std::size_t>& k) {
  std::vector<std::size_t> dims{e_dim};
  for (auto x : k) dims.push_back(x + 1);
  return dims;
}

inline void check_orders(const MonodromicModule& m, const std::vector<std::size_t>& k) {
  require(k.size() == m.coordinates(), ErrorCode::DimensionMismatch, "nilsson: one order per coordinate");
}

}  // namespace detail

inline DoubleComplexModel nilsson_tensor(const MonodromicModule& m, const RationalIndex& alpha,
                                         const std::vector<std::size_t>& k) {
  detail::check_orders(m, k);
  const auto& ns = m.at(alpha);
  DoubleComplexModel dc{alpha, k, ns.front().dim(), {}};
  const auto dims = detail::factor_dims(dc.e_dim, k);
  for (std::size_t i = 0; i < k.size(); ++i)
    dc.a.push_back(detail::embed_factor(dims, 0, ns[i].matrix()) - detail::embed_factor(dims, i + 1, nilsson_shift(k[i])));
  return dc;
}

/// m ↦ Σ_{0<=l<=k} N_1^{l_1} ... N_p^{l_p} m ⊗ e_l, as a dim(W) x dim(E) matrix.
inline QMatrix nils_map(const MonodromicModule& m, const RationalIndex& alpha, const std::vector<std::size_t>& k) {
  detail::check_orders(m, k);
  const auto& ns = m.at(alpha);
  // Σ_l N^l ⊗ e_l = Π_i (Σ_{l_i} N_i^{l_i} ⊗ e_{l_i}) with commuting factors
  const std::size_t e = ns.front().dim();
  QMatrix out = QMatrix::identity(e);
  std::vector<std::size_t> dims{e};
  for (std::size_t i = 0; i < k.size(); ++i) {
    // column vector Σ_l N_i^l ⊗ e_l on the first factor, identity on the rest
    QMatrix col(e * (k[i] + 1), e);
    for (std::size_t l = 0; l <= k[i]; ++l) {
      QMatrix pw = ns[i].power(l);
      for (std::size_t r = 0; r < e; ++r)
        for (std::size_t c = 0; c < e; ++c) col(r * (k[i] + 1) + l, c) = pw(r, c);
    }
    // acts on E ⊗ K_1 ⊗ ... ⊗ K_{i}: insert K_{i+1} after E... keep E first by
    // applying to E and then moving the new factor to the end
    std::size_t rest = 1;
    for (std::size_t f = 1; f < dims.size(); ++f) rest *= dims[f];
    QMatrix lifted(e * (k[i] + 1) * rest, e * rest);
    for (std::size_t r = 0; r < e; ++r)
      for (std::size_t l = 0; l <= k[i]; ++l)
        for (std::size_t c = 0; c < e; ++c) {
          const Rational& v = col(r * (k[i] + 1) + l, c);
          if (v == 0) continue;
          for (std::size_t s = 0; s < rest; ++s) lifted((r * rest + s) * (k[i] + 1) + l, c * rest + s) = v;
        }
    out = lifted * out;
    dims.push_back(k[i] + 1);
  }
  return out;
}

/// ⋂_i ker A_i inside W.
inline QSubspace h_minus2(const DoubleComplexModel& dc) {
  QSubspace acc = QSubspace::full(dc.dim());
  for (const auto& a : dc.a) acc = subspace_intersect(acc, QSubspace::span(dc.dim(), null_space(a)));
  return acc;
}

struct NilsIsoReport {
  /// k_i >= nilpotency degree of N_i (largest j with N_i^j != 0) for all i.
  bool hypothesis = true;
  bool injective = false;
  bool image_in_kernel = false;
  bool onto_kernel = false;
  std::size_t e_dim = 0;
  std::size_t kernel_dim = 0;
  std::size_t image_dim = 0;
  /// A vector of E whose image leaves the kernel, or a kernel vector not
  /// reached, when the check fails.
  std::optional<QVector> witness;
  std::string failure;
  bool isomorphism() const { return injective && image_in_kernel && onto_kernel; }
};

inline bool nils_hypothesis(const MonodromicModule& m, const RationalIndex& alpha, const std::vector<std::size_t>& k) {
  detail::check_orders(m, k);
  const auto& ns = m.at(alpha);
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] < ns[i].degree()) return false;
  return true;
}

/// Nils: E_α -> ⋂ ker A_i is an isomorphism.
inline NilsIsoReport nils_iso_check(const MonodromicModule& m, const RationalIndex& alpha,
                                    const std::vector<std::size_t>& k) {
  NilsIsoReport rep;
  rep.hypothesis = nils_hypothesis(m, alpha, k);
  const DoubleComplexModel dc = nilsson_tensor(m, alpha, k);
  const QMatrix nils = nils_map(m, alpha, k);
  const QSubspace ker = h_minus2(dc);
  const QSubspace img = image_of(nils, QSubspace::full(dc.e_dim));
  rep.e_dim = dc.e_dim;
  rep.kernel_dim = ker.dim();
  rep.image_dim = img.dim();
  rep.injective = img.dim() == dc.e_dim;
  rep.image_in_kernel = ker.contains(img);
  rep.onto_kernel = img.contains(ker);
  if (!rep.injective) {
    rep.failure = "nils is not injective";
    rep.witness = null_space(nils).front();
  } else if (!rep.image_in_kernel) {
    rep.failure = "image of nils leaves the joint kernel";
    for (std::size_t c = 0; c < dc.e_dim; ++c)
      if (!ker.contains(nils.col(c))) {
        QVector e(dc.e_dim);
        e[c] = 1;
        rep.witness = e;
        break;
      }
  } else if (!rep.onto_kernel) {
    rep.failure = "joint kernel is larger than the image of nils";
    for (const auto& v : ker.basis_vectors())
      if (!img.contains(v)) {
        rep.witness = v;
        break;
      }
  }
  return rep;
}

struct TwoPathReport {
  bool maps_agree = false;     // after re-indexing e_{l_2} ⊗ e_{l_1} -> e_{l_1} ⊗ e_{l_2}
  bool images_equal = false;
  bool images_in_kernel = false;
  bool matches_joint = false;  // both equal the two-variable nils map
  bool ok() const { return maps_agree && images_equal && images_in_kernel && matches_joint; }
};

namespace detail {

/// x ↦ Σ_{l<=k} op^l x ⊗ e_l on a space of dimension d, new factor last.
inline QMatrix nils_one_slot(const QMatrix& op, std::size_t k) {
  const std::size_t d = op.rows();
  QMatrix out(d * (k + 1), d);
  QMatrix pw = QMatrix::identity(d);
  for (std::size_t l = 0; l <= k; ++l) {
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) out(r * (k + 1) + l, c) = pw(r, c);
    pw = pw * op;
  }
  return out;
}

}  // namespace detail

/// Nils in slot 1 then slot 2 versus slot 2 then slot 1 (p = 2).
inline TwoPathReport two_path_compare(const MonodromicModule& m, const RationalIndex& alpha,
                                      const std::vector<std::size_t>& k) {
  require(m.coordinates() == 2, ErrorCode::InvalidArgument, "two-path comparison needs two coordinates");
  detail::check_orders(m, k);
  const auto& ns = m.at(alpha);
  const std::size_t e = ns.front().dim();
  const std::size_t k1 = k[0] + 1, k2 = k[1] + 1;
  // path (1,2): E -> E⊗K1 -> E⊗K1⊗K2
  QMatrix p1 = detail::nils_one_slot(ns[0].matrix(), k[0]);
  QMatrix p12 = detail::nils_one_slot(kronecker(ns[1].matrix(), QMatrix::identity(k1)), k[1]) * p1;
  // path (2,1): E -> E⊗K2 -> E⊗K2⊗K1
  QMatrix p2 = detail::nils_one_slot(ns[1].matrix(), k[1]);
  QMatrix p21 = detail::nils_one_slot(kronecker(ns[0].matrix(), QMatrix::identity(k2)), k[0]) * p2;
  // re-index E⊗K2⊗K1 -> E⊗K1⊗K2
  const std::size_t n = e * k1 * k2;
  QMatrix swap(n, n);
  for (std::size_t x = 0; x < e; ++x)
    for (std::size_t a = 0; a < k1; ++a)
      for (std::size_t b = 0; b < k2; ++b) swap((x * k1 + a) * k2 + b, (x * k2 + b) * k1 + a) = 1;
  const QMatrix p21r = swap * p21;
  TwoPathReport rep;
  rep.maps_agree = p12 == p21r;
  const QSubspace i12 = image_of(p12, QSubspace::full(e));
  const QSubspace i21 = image_of(p21r, QSubspace::full(e));
  rep.images_equal = i12 == i21;
  const QSubspace ker = h_minus2(nilsson_tensor(m, alpha, k));
  rep.images_in_kernel = ker.contains(i12) && ker.contains(i21);
  rep.matches_joint = p12 == nils_map(m, alpha, k);
  return rep;
}

/// One factor of the Nilsson class module with α = -p/q: the matrix of
/// t∂_t on e_0..e_k, acting by -(1 - p/q) e_l - e_{l-1}.
struct NilssonFactor {
  std::size_t p = 1;
  std::size_t q = 1;
  std::size_t k = 0;
  Rational alpha;
  QMatrix t_dt;

  Rational eigenvalue() const { return Rational(-1) + Rational(static_cast<long>(p), static_cast<long>(q)); }
  /// t∂_t minus its eigenvalue: minus the shift, nilpotent of exponent k+1.
  QMatrix nilpotent_part() const { return t_dt - eigenvalue() * QMatrix::identity(k + 1); }
};

inline std::vector<NilssonFactor> fixture_nilsson(std::size_t q, std::size_t k) {
  require(q >= 1, ErrorCode::InvalidArgument, "nilsson: q must be positive");
  std::vector<NilssonFactor> out;
  for (std::size_t p = 1; p <= q; ++p) {
    NilssonFactor f;
    f.p = p;
    f.q = q;
    f.k = k;
    f.alpha = -Rational(static_cast<long>(p), static_cast<long>(q));
    f.t_dt = f.eigenvalue() * QMatrix::identity(k + 1) - nilsson_shift(k);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace hodge
