#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hodge/filtration/filtration.hpp"
#include "hodge/monodromy/nilpotent.hpp"

namespace hodge {

/// A weight filtration together with the weight it is centered at. The
/// stored filtration uses absolute indices; `centered(l)` is M_{center+l}.
struct CenteredFiltration {
  Filtration filtration;
  Rational center{0};

  const QSubspace& at(const Rational& a) const { return filtration.at(a); }
  const QSubspace& centered(const Rational& l) const { return filtration.at(center + l); }
  std::size_t graded_dim(const Rational& a) const { return filtration.graded(a).dim(); }

  /// (index, dim gr) for every jump.
  std::vector<std::pair<Rational, std::size_t>> graded_table() const {
    std::vector<std::pair<Rational, std::size_t>> t;
    for (const auto& j : filtration.jumps()) t.emplace_back(j, graded_dim(j));
    return t;
  }

  friend bool operator==(const CenteredFiltration& a, const CenteredFiltration& b) {
    return a.filtration == b.filtration && a.center == b.center;
  }
};

/// Vectors N^j v of one Jordan chain, top first.
struct JordanChain {
  std::vector<QVector> vectors;
  std::size_t length() const { return vectors.size(); }
};

/// Jordan chains of a nilpotent operator, longest first. Tops of length a
/// complement ker N^{a-1} + N(ker N^{a+1}) inside ker N^a.
inline std::vector<JordanChain> jordan_chains(const NilpotentOperator& n) {
  const std::size_t dim = n.dim();
  const std::size_t e = n.exponent();
  std::vector<QSubspace> ker(e + 2);
  for (std::size_t a = 0; a <= e + 1; ++a) ker[a] = n.kernel_of_power(a);
  std::vector<JordanChain> chains;
  for (std::size_t a = e; a >= 1; --a) {
    QSubspace acc = subspace_sum(ker[a - 1], image_of(n.matrix(), ker[a + 1]));
    for (const auto& v : ker[a].basis_vectors()) {
      if (acc.contains(v)) continue;
      JordanChain c;
      QVector x = v;
      for (std::size_t j = 0; j < a; ++j) {
        c.vectors.push_back(x);
        x = n.matrix().apply(x);
      }
      chains.push_back(std::move(c));
      acc = subspace_sum(acc, QSubspace::span(dim, {v}));
    }
  }
  return chains;
}

/// Weight of N^j v in a chain of length a: a - 1 - 2j.
inline std::int64_t chain_weight(std::size_t length, std::size_t j) {
  return static_cast<std::int64_t>(length) - 1 - 2 * static_cast<std::int64_t>(j);
}

/// Filtration whose step at w is the span of all vectors of weight <= w.
inline Filtration filtration_from_weights(std::size_t dim, const std::vector<std::pair<Rational, QVector>>& weighted) {
  std::map<Rational, std::vector<QVector>> by_weight;
  for (const auto& [w, v] : weighted) by_weight[w].push_back(v);
  std::vector<Filtration::Step> steps;
  std::vector<QVector> acc;
  for (auto& [w, vs] : by_weight) {
    acc.insert(acc.end(), vs.begin(), vs.end());
    steps.push_back({w, QSubspace::span(dim, acc)});
  }
  if (dim == 0) return Filtration::from_steps(0, {});
  return Filtration::from_steps(dim, std::move(steps));
}

/// Checks N(M_l) ⊆ M_{l-2} and N^l: gr_{c+l} -> gr_{c-l} bijective for l >= 1.
/// Returns a description of the first violated axiom.
inline std::optional<std::string> monodromy_defect(const NilpotentOperator& n, const CenteredFiltration& m) {
  if (!m.filtration.is_preserved_by(n.matrix(), Rational(-2))) return "N(M_l) is not contained in M_{l-2}";
  Rational reach = 0;
  for (const auto& j : m.filtration.jumps()) {
    const Rational d = j > m.center ? Rational(j - m.center) : Rational(m.center - j);
    if (d > reach) reach = d;
  }
  for (std::int64_t l = 1; Rational(l) <= reach + 1; ++l) {
    auto up = m.filtration.graded(m.center + l);
    auto down = m.filtration.graded(m.center - l);
    if (up.dim() != down.dim())
      return "dim gr_" + format_rational(m.center + l) + " != dim gr_" + format_rational(m.center - l);
    if (up.dim() == 0) continue;
    QMatrix f = induced_map(n.power(static_cast<std::size_t>(l)), up, down);
    if (rank(f) != up.dim()) return "N^" + std::to_string(l) + " is not an isomorphism gr_" +
                                   format_rational(m.center + l) + " -> gr_" + format_rational(m.center - l);
  }
  return std::nullopt;
}

/// The monodromy filtration W(N) centered at `center`, built from Jordan
/// chains and certified against both axioms before returning.
inline CenteredFiltration monodromy_filtration(const NilpotentOperator& n, const Rational& center = Rational(0)) {
  std::vector<std::pair<Rational, QVector>> weighted;
  for (const auto& c : jordan_chains(n))
    for (std::size_t j = 0; j < c.length(); ++j) weighted.emplace_back(center + Rational(chain_weight(c.length(), j)), c.vectors[j]);
  CenteredFiltration m{filtration_from_weights(n.dim(), weighted), center};
  if (auto d = monodromy_defect(n, m)) fail(ErrorCode::InvariantViolation, "monodromy filtration: " + *d);
  return m;
}

}  // namespace hodge
