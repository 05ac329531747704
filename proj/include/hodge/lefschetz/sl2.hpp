#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hodge/lefschetz/graded.hpp"

namespace hodge {

/// For every fixed multidegree in the other slots, the filtration
/// ⊕_{l_i <= k} H_l of E = ⊕_{l_i} H_l equals the monodromy filtration of
/// N_i restricted to E.
inline bool grading_is_monodromy(const GradedBilinearStructure& g, std::size_t slot) {
  require(slot < g.slots(), ErrorCode::InvalidArgument, "slot out of range");
  std::set<Multidegree> complements;
  for (const auto& [l, s] : g.space.pieces()) {
    Multidegree c = l;
    c.erase(c.begin() + static_cast<std::ptrdiff_t>(slot));
    complements.insert(c);
  }
  const std::size_t n = g.dim();
  for (const auto& c : complements) {
    std::map<std::int64_t, QSubspace> column;
    QSubspace e = QSubspace::zero(n);
    for (const auto& [l, s] : g.space.pieces()) {
      Multidegree rest = l;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(slot));
      if (rest != c) continue;
      column.emplace(l[slot], s);
      e = subspace_sum(e, s);
    }
    QMatrix restricted = restrict_to(g.ns[slot].matrix(), e);
    auto w = monodromy_filtration(NilpotentOperator(restricted));
    // compare at every index where either filtration can jump
    std::set<Rational> idx;
    for (const auto& [k, s] : column) idx.insert(Rational(k));
    for (const auto& j : w.filtration.jumps()) idx.insert(j);
    for (const auto& k : idx) {
      QSubspace graded_step = QSubspace::zero(n);
      for (const auto& [kk, s] : column)
        if (Rational(kk) <= k) graded_step = subspace_sum(graded_step, s);
      if (embed_from(e, w.at(k)) != graded_step) return false;
    }
  }
  return true;
}

inline bool grading_is_monodromy(const GradedBilinearStructure& g) {
  for (std::size_t i = 0; i < g.slots(); ++i)
    if (!grading_is_monodromy(g, i)) return false;
  return true;
}

/// sl(2) action with [X,Y] = H, [X,H] = -2X, [Y,H] = 2Y.
struct Sl2Action {
  QMatrix x, y, h;

  std::optional<std::string> bracket_defect() const {
    if (commutator(x, y) != h) return "[X,Y] != H";
    if (commutator(x, h) != Rational(-2) * x) return "[X,H] != -2X";
    if (commutator(y, h) != Rational(2) * y) return "[Y,H] != 2Y";
    return std::nullopt;
  }
};

/// Y = N_i, H = grading scalar in slot i, and the unique X of degree +2 in
/// slot i (degree 0 elsewhere) with [X,Y] = H, found as a linear system in
/// the graded basis and certified by the bracket table.
inline Sl2Action sl2_complete(const GradedBilinearStructure& g, std::size_t slot) {
  require(slot < g.slots(), ErrorCode::InvalidArgument, "slot out of range");
  require(grading_is_monodromy(g, slot), ErrorCode::PreconditionFailed,
          "sl2: grading is not the monodromy grading of N_" + std::to_string(slot + 1));
  const std::size_t n = g.dim();
  Sl2Action a;
  a.y = g.ns[slot].matrix();
  a.h = g.space.grading_operator(slot);
  if (n == 0) {
    a.x = QMatrix(0, 0);
    return a;
  }
  const QMatrix& t = g.space.adapted_basis();
  const QMatrix& tinv = g.space.adapted_basis_inverse();
  const QMatrix y = tinv * a.y * t;
  const QMatrix h = tinv * a.h * t;
  // block positions allowed for X: from H_l to H_{l + 2 e_slot}
  std::vector<Multidegree> deg_of;
  std::map<Multidegree, std::size_t> offset;
  {
    std::size_t off = 0;
    for (const auto& [l, s] : g.space.pieces()) {
      offset[l] = off;
      for (std::size_t i = 0; i < s.dim(); ++i) deg_of.push_back(l);
      off += s.dim();
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> vars;
  std::vector<std::vector<std::ptrdiff_t>> var_at(n, std::vector<std::ptrdiff_t>(n, -1));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (deg_of[r] == unit_shift(deg_of[c], slot, 2)) {
        var_at[r][c] = static_cast<std::ptrdiff_t>(vars.size());
        vars.emplace_back(r, c);
      }
  // (XY - YX)(r,c) = h(r,c)
  std::vector<QVector> rows;
  QVector rhs;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      QVector row(vars.size());
      bool any = false;
      for (std::size_t k = 0; k < n; ++k) {
        if (var_at[r][k] >= 0 && y(k, c) != 0) {
          row[static_cast<std::size_t>(var_at[r][k])] += y(k, c);
          any = true;
        }
        if (var_at[k][c] >= 0 && y(r, k) != 0) {
          row[static_cast<std::size_t>(var_at[k][c])] -= y(r, k);
          any = true;
        }
      }
      if (!any && h(r, c) == 0) continue;
      rows.push_back(std::move(row));
      rhs.push_back(h(r, c));
    }
  QMatrix x(n, n);
  if (!rows.empty()) {
    auto sol = solve(QMatrix::from_rows(vars.size(), rows), rhs);
    require(sol.has_value(), ErrorCode::PreconditionFailed, "sl2: no X with [X,Y] = H (inconsistent grading)");
    for (std::size_t v = 0; v < vars.size(); ++v) x(vars[v].first, vars[v].second) = (*sol)[v];
  }
  a.x = t * x * tinv;
  if (auto d = a.bracket_defect()) fail(ErrorCode::InvariantViolation, "sl2: " + *d);
  return a;
}

/// w = e^{-X} e^{Y} e^{-X} for one slot.
inline QMatrix weil_w(const Sl2Action& a) {
  const QMatrix ex = nilpotent_exp(Rational(-1) * a.x);
  return ex * nilpotent_exp(a.y) * ex;
}

/// Product w_{s_1} ... w_{s_r} over the listed slots.
inline QMatrix weil_w(const GradedBilinearStructure& g, const std::vector<std::size_t>& slots) {
  QMatrix w = QMatrix::identity(g.dim());
  for (auto s : slots) w = w * weil_w(sl2_complete(g, s));
  return w;
}

inline QMatrix weil_w(const GradedBilinearStructure& g) {
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < g.slots(); ++i) all.push_back(i);
  return weil_w(g, all);
}

}  // namespace hodge
