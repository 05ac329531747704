#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hodge/filtration/filtration.hpp"
#include "hodge/lefschetz/hodge.hpp"
#include "hodge/lefschetz/polarization.hpp"
#include "hodge/monodromy/nilpotent.hpp"

namespace hodge {

/// Shift N v_l = v_{l-1} on v_0..v_k.
inline QMatrix vk_shift(std::size_t k) {
  QMatrix n(k + 1, k + 1);
  for (std::size_t l = 1; l <= k; ++l) n(l - 1, l) = 1;
  return n;
}

/// k(v_l, v_{k-l}) = (-1)^{k-l}: the sign-normalized pairing that is
/// infinitesimally isotropic for the shift.
inline QMatrix vk_signed_form(std::size_t k) {
  QMatrix q(k + 1, k + 1);
  for (std::size_t l = 0; l <= k; ++l) q(l, k - l) = (k - l) % 2 == 0 ? 1 : -1;
  return q;
}

/// Q(v_l, v_{k-l'}) = δ_{l l'}, recorded as stated.
inline QMatrix vk_verbatim_form(std::size_t k) {
  QMatrix q(k + 1, k + 1);
  for (std::size_t l = 0; l <= k; ++l) q(l, k - l) = 1;
  return q;
}

struct VkFixture {
  std::size_t k = 0;
  NilpotentOperator n;
  QMatrix q_verbatim;
  /// F^p for p = 0..k+1 (decreasing, F^{k+1} = 0).
  std::vector<QSubspace> f;
  /// W_i = span{v_l : 0 <= l <= i/2}, jumps at 0, 2, ..., 2k.
  Filtration w;
  /// Graded by 2l - k with center k and the signed form.
  GradedBilinearStructure structure;
  /// H_{2l-k} = Q v_l of Hodge type (l, l).
  std::map<Multidegree, RationalHodgeStructure> hodge;
};

inline VkFixture fixture_Vk(std::size_t k) {
  const std::size_t d = k + 1;
  VkFixture v;
  v.k = k;
  v.n = NilpotentOperator(vk_shift(k));
  v.q_verbatim = vk_verbatim_form(k);
  for (std::size_t p = 0; p <= d; ++p) {
    std::vector<std::size_t> idx;
    for (std::size_t l = p; l <= k; ++l) idx.push_back(l);
    v.f.push_back(QSubspace::coordinate(d, idx));
  }
  std::vector<Filtration::Step> steps;
  std::map<Multidegree, QSubspace> pieces;
  for (std::size_t l = 0; l <= k; ++l) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j <= l; ++j) idx.push_back(j);
    steps.push_back({Rational(static_cast<long>(2 * l)), QSubspace::coordinate(d, idx)});
    const Multidegree deg{2 * static_cast<std::int64_t>(l) - static_cast<std::int64_t>(k)};
    pieces.emplace(deg, QSubspace::coordinate(d, {l}));
    RationalHodgeStructure h;
    h.weight = 2 * static_cast<std::int64_t>(l);
    h.pieces.emplace(HodgeType{static_cast<std::int64_t>(l), static_cast<std::int64_t>(l)}, complexify(QSubspace::coordinate(d, {l})));
    v.hodge.emplace(deg, std::move(h));
  }
  v.w = Filtration::from_steps(d, std::move(steps));
  v.structure = make_structure(GradedSpace(d, 1, std::move(pieces)), {v.n}, vk_signed_form(k),
                               static_cast<std::int64_t>(k));
  return v;
}

namespace detail {

/// Tensor product of V_{m_i - 1} blocks with multiplicity space Q^r carrying
/// the Gram matrix g. Basis order: block indices (slot 0 most significant),
/// then the multiplicity index.
inline GradedBilinearStructure tensor_blocks(const std::vector<std::size_t>& sizes, const QMatrix& g,
                                             std::optional<std::size_t> perturbed_slot = std::nullopt) {
  const std::size_t p = sizes.size();
  const std::size_t r = g.rows();
  QMatrix form = QMatrix::identity(1);
  std::size_t dim = 1;
  for (std::size_t i = 0; i < p; ++i) {
    require(sizes[i] >= 1, ErrorCode::InvalidArgument, "tensor fixture: block sizes must be positive");
    QMatrix k = vk_signed_form(sizes[i] - 1);
    if (perturbed_slot == i) {
      k(0, sizes[i] - 1) *= 2;
    }
    form = kronecker(form, k);
    dim *= sizes[i];
  }
  form = kronecker(form, g);
  std::vector<NilpotentOperator> ns;
  for (std::size_t i = 0; i < p; ++i) {
    QMatrix m = QMatrix::identity(1);
    for (std::size_t j = 0; j < p; ++j) m = kronecker(m, j == i ? vk_shift(sizes[j] - 1) : QMatrix::identity(sizes[j]));
    ns.emplace_back(kronecker(m, QMatrix::identity(r)));
  }
  std::map<Multidegree, std::vector<std::size_t>> idx;
  for (std::size_t b = 0; b < dim; ++b) {
    Multidegree l(p);
    std::size_t rest = b;
    for (std::size_t i = p; i-- > 0;) {
      const std::size_t li = rest % sizes[i];
      rest /= sizes[i];
      l[i] = 2 * static_cast<std::int64_t>(li) - static_cast<std::int64_t>(sizes[i] - 1);
    }
    for (std::size_t j = 0; j < r; ++j) idx[l].push_back(b * r + j);
  }
  std::map<Multidegree, QSubspace> pieces;
  for (const auto& [l, ix] : idx) pieces.emplace(l, QSubspace::coordinate(dim * r, ix));
  return make_structure(GradedSpace(dim * r, p, std::move(pieces)), std::move(ns), std::move(form));
}

}  // namespace detail

/// ⊗_i V_{m_i - 1} with the product of the signed forms; every slot is
/// polarized.
inline GradedBilinearStructure fixture_tensor_jordan(const std::vector<std::size_t>& sizes) {
  return detail::tensor_blocks(sizes, QMatrix::identity(1));
}

/// Direct sum of graded structures with the same number of slots.
inline GradedBilinearStructure direct_sum(const GradedBilinearStructure& a, const GradedBilinearStructure& b) {
  require(a.slots() == b.slots(), ErrorCode::DimensionMismatch, "direct sum: slot counts differ");
  const std::size_t na = a.dim(), nb = b.dim(), n = na + nb;
  auto block = [&](const QMatrix& x, const QMatrix& y) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < na; ++j) m(i, j) = x(i, j);
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j) m(na + i, na + j) = y(i, j);
    return m;
  };
  std::vector<NilpotentOperator> ns;
  for (std::size_t i = 0; i < a.slots(); ++i) ns.emplace_back(block(a.ns[i].matrix(), b.ns[i].matrix()));
  std::map<Multidegree, QSubspace> pieces;
  auto add = [&](const GradedSpace& s, std::size_t off) {
    for (const auto& [l, sub] : s.pieces()) {
      std::vector<QVector> vs;
      for (const auto& v : sub.basis_vectors()) {
        QVector w(n);
        for (std::size_t i = 0; i < v.size(); ++i) w[off + i] = v[i];
        vs.push_back(std::move(w));
      }
      QSubspace e = QSubspace::span(n, vs);
      auto it = pieces.find(l);
      if (it == pieces.end()) pieces.emplace(l, std::move(e));
      else it->second = subspace_sum(it->second, e);
    }
  };
  add(a.space, 0);
  add(b.space, na);
  return make_structure(GradedSpace(n, a.slots(), std::move(pieces)), std::move(ns), block(a.form, b.form), a.center);
}

struct RandomStructure {
  GradedBilinearStructure g;
  /// Polarized by construction: every multiplicity Gram matrix is positive
  /// definite and no isotropy perturbation was applied.
  bool expected_polarized = true;
  std::string description;
};

/// Random polarized-or-not graded structure: a direct sum of one or two
/// summands (⊗ V_{m_i-1}) ⊗ (Q^r, G), optionally with an isotropy
/// perturbation, in a random rational basis.
inline RandomStructure random_graded_structure(std::mt19937_64& rng, std::size_t slots, std::size_t max_dim) {
  require(slots >= 1 && max_dim >= 1, ErrorCode::InvalidArgument, "random structure: need slots >= 1, max_dim >= 1");
  auto uni = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  RandomStructure out;
  const std::size_t summands = static_cast<std::size_t>(uni(1, 2));
  std::size_t used = 0;
  std::optional<GradedBilinearStructure> acc;
  for (std::size_t s = 0; s < summands; ++s) {
    std::vector<std::size_t> sizes(slots, 1);
    std::size_t r = 1;
    for (int attempt = 0; attempt < 20; ++attempt) {
      std::size_t d = 1;
      for (auto& m : sizes) {
        m = static_cast<std::size_t>(uni(1, 3));
        d *= m;
      }
      r = static_cast<std::size_t>(uni(1, 2));
      if (used + d * r <= max_dim) break;
      sizes.assign(slots, 1);
      r = 1;
    }
    if (used + r > max_dim && acc) break;
    // multiplicity Gram matrix: B B^T (positive definite) or indefinite
    QMatrix b(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) b(i, j) = i == j ? Rational(uni(1, 3)) : (i > j ? Rational(uni(-2, 2)) : Rational(0));
    QMatrix gram = b * b.transpose();
    const bool definite = uni(0, 3) != 0;
    if (!definite) gram(r - 1, r - 1) = -gram(r - 1, r - 1);
    std::optional<std::size_t> perturbed;
    if (uni(0, 4) == 0)
      for (std::size_t i = 0; i < slots; ++i)
        if (sizes[i] >= 2) {
          perturbed = i;
          break;
        }
    out.expected_polarized = out.expected_polarized && definite && !perturbed;
    auto part = detail::tensor_blocks(sizes, gram, perturbed);
    used += part.dim();
    out.description += std::string(out.description.empty() ? "" : " + ") + "blocks(";
    for (std::size_t i = 0; i < sizes.size(); ++i) out.description += (i ? "," : "") + std::to_string(sizes[i]);
    out.description += ")x" + std::to_string(r) + (definite ? "" : " indefinite") + (perturbed ? " perturbed" : "");
    acc = acc ? direct_sum(*acc, part) : part;
  }
  // unipotent lower-triangular change of basis with small entries
  const std::size_t n = acc->dim();
  QMatrix t = QMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) t(i, j) = Rational(uni(-1, 1));
  QMatrix perm(n, n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < n; ++i) perm(i, order[i]) = 1;
  out.g = change_basis(*acc, t * perm);
  return out;
}

}  // namespace hodge
