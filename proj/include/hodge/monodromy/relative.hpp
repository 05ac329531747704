#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hodge/monodromy/monodromy_filtration.hpp"

namespace hodge {

/// Why no relative monodromy filtration exists: at the step of L with
/// index `stage`, the graded vector `vector` (ambient representative, of
/// forced weight `weight`) has no lift with N(lift) in M_{weight-2}.
struct NonExistence {
  Rational stage;
  std::size_t stage_number = 0;
  QVector vector;
  Rational weight;
  std::string message;
};

struct RelativeMonodromy {
  std::optional<CenteredFiltration> filtration;
  std::optional<NonExistence> certificate;
  bool exists() const { return filtration.has_value(); }
};

/// Checks N(M_j) ⊆ M_{j-2} and, for every jump k of L and l >= 1, that
/// N^l: gr^M_{k+l} gr^L_k -> gr^M_{k-l} gr^L_k is bijective.
inline std::optional<std::string> relative_monodromy_defect(const NilpotentOperator& n, const Filtration& l,
                                                            const Filtration& m) {
  if (!m.is_preserved_by(n.matrix(), Rational(-2))) return "N(M_j) is not contained in M_{j-2}";
  Rational reach = 0;
  for (const auto& a : m.jumps())
    for (const auto& k : l.jumps()) {
      const Rational d = a > k ? Rational(a - k) : Rational(k - a);
      if (d > reach) reach = d;
    }
  auto piece = [&](const Rational& j, const Rational& k) {
    const QSubspace& lk = l.at(k);
    const QSubspace& lb = l.below(k);
    return QuotientPresentation<Rational>(subspace_sum(subspace_intersect(m.at(j), lk), lb),
                                          subspace_sum(subspace_intersect(m.below(j), lk), lb));
  };
  for (const auto& k : l.jumps()) {
    for (std::int64_t s = 1; Rational(s) <= reach + 1; ++s) {
      auto up = piece(k + s, k);
      auto down = piece(k - s, k);
      if (up.dim() != down.dim())
        return "dim gr^M_" + format_rational(k + s) + " gr^L_" + format_rational(k) + " != dim gr^M_" +
               format_rational(k - s) + " gr^L_" + format_rational(k);
      if (up.dim() == 0) continue;
      if (rank(induced_map(n.power(static_cast<std::size_t>(s)), up, down)) != up.dim())
        return "N^" + std::to_string(s) + " is not an isomorphism on gr^L_" + format_rational(k);
    }
  }
  return std::nullopt;
}

/// W(N; L), built step by step along L. On L_{k_s}/L_{k_{s-1}} the
/// filtration is forced to be the monodromy filtration of the induced
/// operator centered at k_s; lifts of an adapted basis are corrected by
/// vectors of L_{k_{s-1}} solving N(lift) ∈ M_{w-2}, an affine linear
/// system. An inconsistent system means no relative monodromy filtration
/// exists. Any solution yields the same filtration, which is re-verified.
inline RelativeMonodromy relative_monodromy(const NilpotentOperator& n, const Filtration& l) {
  const std::size_t dim = n.dim();
  require(l.ambient_dim() == dim, ErrorCode::DimensionMismatch, "relative monodromy: L lives in another space");
  require(l.is_preserved_by(n.matrix()), ErrorCode::NotPreserved, "relative monodromy: N does not preserve L");
  RelativeMonodromy out;
  std::vector<std::pair<Rational, QVector>> chosen;  // weighted basis of M on the current L-step
  auto span_upto = [&](const Rational& w) {
    std::vector<QVector> vs;
    for (const auto& [x, v] : chosen)
      if (x <= w) vs.push_back(v);
    return QSubspace::span(dim, vs);
  };
  QSubspace u = QSubspace::zero(dim);
  std::size_t stage_number = 0;
  for (const auto& step : l.steps()) {
    ++stage_number;
    const Rational k = step.index;
    QuotientPresentation<Rational> q(step.space, u);
    NilpotentOperator nq(induced_map(n.matrix(), q, q));
    // adapted basis of the quotient: Jordan chains of the induced operator
    struct Item {
      QVector lift;  // ambient representative of the quotient vector
      Rational weight;
      std::optional<std::size_t> next;  // index of N_Q(item) when nonzero
    };
    std::vector<Item> items;
    for (const auto& c : jordan_chains(nq)) {
      for (std::size_t j = 0; j < c.length(); ++j) {
        QVector lift(dim);
        for (std::size_t r = 0; r < q.dim(); ++r)
          if (c.vectors[j][r] != 0)
            for (std::size_t x = 0; x < dim; ++x) lift[x] += c.vectors[j][r] * q.representatives()(r, x);
        std::optional<std::size_t> next;
        if (j + 1 < c.length()) next = items.size() + 1;
        items.push_back({std::move(lift), k + Rational(chain_weight(c.length(), j)), next});
      }
    }
    // unknowns: coefficients of u_item in the echelon basis of U
    const std::size_t du = u.dim();
    const QMatrix ub = u.basis();  // du x dim
    const QMatrix nub = du ? (n.matrix() * ub.transpose()).transpose() : QMatrix(0, dim);
    std::vector<QVector> rows;
    QVector rhs;
    const std::size_t unknowns = items.size() * du;
    auto consistent = [&]() {
      if (rows.empty()) return true;
      return solve(QMatrix::from_rows(unknowns, rows), rhs).has_value();
    };
    for (std::size_t i = 0; i < items.size(); ++i) {
      const Item& it = items[i];
      const QSubspace target = span_upto(it.weight - 2);
      // residual r = N lift_i - lift_next must satisfy y·(r + N u_i - u_next) = 0
      QVector r = n.matrix().apply(it.lift);
      if (it.next)
        for (std::size_t x = 0; x < dim; ++x) r[x] -= items[*it.next].lift[x];
      const QMatrix ann = target.annihilator().basis();
      for (std::size_t a = 0; a < ann.rows(); ++a) {
        QVector row(unknowns);
        Rational b = 0;
        for (std::size_t x = 0; x < dim; ++x) b -= ann(a, x) * r[x];
        for (std::size_t c = 0; c < du; ++c) {
          Rational coef_n = 0, coef_u = 0;
          for (std::size_t x = 0; x < dim; ++x) {
            coef_n += ann(a, x) * nub(c, x);
            coef_u += ann(a, x) * ub(c, x);
          }
          row[i * du + c] += coef_n;
          if (it.next) row[*it.next * du + c] -= coef_u;
        }
        // a row with no unknowns and nonzero rhs is already a contradiction
        rows.push_back(std::move(row));
        rhs.push_back(b);
      }
      if (!consistent()) {
        out.certificate = NonExistence{k, stage_number, it.lift, it.weight,
                                       "no lift of weight " + format_rational(it.weight) + " in gr^L_" +
                                           format_rational(k) + " satisfies N(M_w) ⊆ M_{w-2}"};
        return out;
      }
    }
    std::optional<QVector> sol = rows.empty() ? QVector(unknowns) : solve(QMatrix::from_rows(unknowns, rows), rhs);
    for (std::size_t i = 0; i < items.size(); ++i) {
      QVector v = items[i].lift;
      for (std::size_t c = 0; c < du; ++c)
        if ((*sol)[i * du + c] != 0)
          for (std::size_t x = 0; x < dim; ++x) v[x] += (*sol)[i * du + c] * ub(c, x);
      chosen.emplace_back(items[i].weight, std::move(v));
    }
    u = step.space;
  }
  Filtration m = filtration_from_weights(dim, chosen);
  if (auto d = relative_monodromy_defect(n, l, m)) fail(ErrorCode::InvariantViolation, "relative monodromy: " + *d);
  out.filtration = CenteredFiltration{std::move(m), Rational(0)};
  return out;
}

}  // namespace hodge
