#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "hodge/lefschetz/graded.hpp"

namespace hodge {

using GMatrix = Matrix<GaussianRational>;
using GVector = Vector<GaussianRational>;
using GSubspace = Subspace<GaussianRational>;

inline GMatrix complexify(const QMatrix& m) {
  GMatrix g(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g(i, j) = GaussianRational(m(i, j));
  return g;
}

inline GSubspace complexify(const QSubspace& s) { return GSubspace::from_rows(complexify(s.basis())); }

inline GSubspace conjugate(const GSubspace& s) {
  GMatrix b = s.basis();
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = conj(b(i, j));
  if (b.rows() == 0) return GSubspace::zero(s.ambient_dim());
  return GSubspace::from_rows(b);
}

using HodgeType = std::pair<std::int64_t, std::int64_t>;

/// Hodge decomposition of the complexification of a rational subspace:
/// pieces of type (p, q) with p + q = weight inside C^n.
struct RationalHodgeStructure {
  std::int64_t weight = 0;
  std::map<HodgeType, GSubspace> pieces;

  GSubspace piece(const HodgeType& t, std::size_t ambient) const {
    auto it = pieces.find(t);
    return it == pieces.end() ? GSubspace::zero(ambient) : it->second;
  }

  /// Checks p + q = weight, conjugation symmetry and that the pieces
  /// decompose the complexification of `underlying`.
  std::optional<std::string> defect(const QSubspace& underlying) const {
    const std::size_t n = underlying.ambient_dim();
    GSubspace acc = GSubspace::zero(n);
    std::size_t total = 0;
    for (const auto& [t, s] : pieces) {
      if (s.ambient_dim() != n) return "piece of another ambient dimension";
      if (t.first + t.second != weight)
        return "type (" + std::to_string(t.first) + "," + std::to_string(t.second) + ") in weight " +
               std::to_string(weight);
      if (conjugate(s) != piece({t.second, t.first}, n))
        return "conjugate of the (" + std::to_string(t.first) + "," + std::to_string(t.second) +
               ") piece is not the (" + std::to_string(t.second) + "," + std::to_string(t.first) + ") piece";
      total += s.dim();
      acc = subspace_sum(acc, s);
    }
    if (total != underlying.dim() || acc != complexify(underlying))
      return "pieces do not decompose the complexification";
    return std::nullopt;
  }

  friend bool operator==(const RationalHodgeStructure&, const RationalHodgeStructure&) = default;
};

struct HodgeTypingReport {
  bool ok = true;
  std::optional<std::string> failure;
};

/// Each H_l carries a Hodge structure of weight center + Σ l_i, and every
/// N_i maps the (p,q) piece of H_l into the (p-1,q-1) piece of
/// H_{l-2e_i}.
inline HodgeTypingReport hodge_typing_check(const GradedBilinearStructure& g,
                                            const std::map<Multidegree, RationalHodgeStructure>& hs) {
  HodgeTypingReport rep;
  const std::size_t n = g.dim();
  auto lookup = [&](const Multidegree& l) -> const RationalHodgeStructure* {
    auto it = hs.find(l);
    return it == hs.end() ? nullptr : &it->second;
  };
  for (const auto& [l, s] : g.space.pieces()) {
    const RationalHodgeStructure* h = lookup(l);
    require(h != nullptr, ErrorCode::InvalidArgument, "hodge typing: no Hodge structure on H" + multidegree_string(l));
    std::int64_t expected = g.center;
    for (auto x : l) expected += x;
    require(h->weight == expected, ErrorCode::WeightMismatch,
            "hodge typing: H" + multidegree_string(l) + " declared weight " + std::to_string(h->weight) +
                ", expected " + std::to_string(expected));
    if (auto d = h->defect(s)) {
      rep.ok = false;
      rep.failure = "H" + multidegree_string(l) + ": " + *d;
      return rep;
    }
  }
  for (std::size_t i = 0; i < g.slots(); ++i) {
    const GMatrix ni = complexify(g.ns[i].matrix());
    for (const auto& [l, h] : hs) {
      const Multidegree target = unit_shift(l, i, -2);
      const RationalHodgeStructure* ht = lookup(target);
      for (const auto& [t, piece] : h.pieces) {
        GSubspace img = image_of(ni, piece);
        if (img.is_zero()) continue;
        GSubspace allowed = ht ? ht->piece({t.first - 1, t.second - 1}, n) : GSubspace::zero(n);
        if (!allowed.contains(img)) {
          rep.ok = false;
          rep.failure = "N_" + std::to_string(i + 1) + " does not map type (" + std::to_string(t.first) + "," +
                        std::to_string(t.second) + ") of H" + multidegree_string(l) + " to type (" +
                        std::to_string(t.first - 1) + "," + std::to_string(t.second - 1) + ")";
          return rep;
        }
      }
    }
  }
  return rep;
}

}  // namespace hodge
