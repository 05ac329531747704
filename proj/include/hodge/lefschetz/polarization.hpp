#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hodge/core/forms.hpp"
#include "hodge/lefschetz/sl2.hpp"

namespace hodge {

/// P_l = H_l ∩ ker N_1^{l_1+1} ∩ ... ∩ ker N_p^{l_p+1} for l >= 0; only
/// nonzero parts are listed.
inline std::map<Multidegree, QSubspace> primitive_parts(const GradedBilinearStructure& g) {
  std::map<Multidegree, QSubspace> out;
  for (const auto& [l, s] : g.space.pieces()) {
    bool nonneg = true;
    for (auto x : l) nonneg = nonneg && x >= 0;
    if (!nonneg) continue;
    QSubspace p = s;
    for (std::size_t i = 0; i < g.slots() && !p.is_zero(); ++i)
      p = subspace_intersect(p, g.ns[i].kernel_of_power(static_cast<std::size_t>(l[i]) + 1));
    if (!p.is_zero()) out.emplace(l, std::move(p));
  }
  return out;
}

/// N_1^{l_1} ... N_p^{l_p}.
inline QMatrix lefschetz_power(const GradedBilinearStructure& g, const Multidegree& l) {
  QMatrix m = QMatrix::identity(g.dim());
  for (std::size_t i = 0; i < g.slots(); ++i) m = m * g.ns[i].power(static_cast<std::size_t>(l[i]));
  return m;
}

struct PolarizationCertificate {
  bool isotropic = true;
  std::optional<std::size_t> non_isotropic_slot;
  /// Criterion (i): isotropy and k(., N^l .) symmetric positive definite on
  /// every primitive part.
  bool primitive_positive = true;
  std::optional<Multidegree> failing_primitive;
  std::optional<std::size_t> failing_primitive_pivot;
  /// Criterion (ii): isotropy and h = k(., w .) symmetric positive definite.
  bool w_positive = true;
  std::optional<std::size_t> failing_w_pivot;
  bool w_symmetric = true;

  bool by_primitives() const { return isotropic && primitive_positive; }
  bool by_w() const { return isotropic && w_positive; }
  bool criteria_agree() const { return by_primitives() == by_w(); }
  bool polarized() const { return by_primitives() && by_w(); }
};

/// Evaluates both polarization criteria without asserting agreement.
inline PolarizationCertificate evaluate_polarization(const GradedBilinearStructure& g) {
  require(grading_is_monodromy(g), ErrorCode::PreconditionFailed,
          "polarization: grading is not the monodromy grading in every slot");
  PolarizationCertificate c;
  const QMatrix& k = g.form;
  for (std::size_t i = 0; i < g.slots() && c.isotropic; ++i) {
    const QMatrix& n = g.ns[i].matrix();
    if (!(n.transpose() * k + k * n).is_zero()) {
      c.isotropic = false;
      c.non_isotropic_slot = i;
    }
  }
  for (const auto& [l, p] : primitive_parts(g)) {
    auto d = positive_definite(gram(p.basis(), k * lefschetz_power(g, l), p.basis()));
    if (!d.positive_definite) {
      c.primitive_positive = false;
      c.failing_primitive = l;
      c.failing_primitive_pivot = d.failing_pivot;
      break;
    }
  }
  auto d = positive_definite(k * weil_w(g));
  c.w_symmetric = d.symmetric;
  c.w_positive = d.positive_definite;
  c.failing_w_pivot = d.failing_pivot;
  return c;
}

/// Both criteria, asserted to agree.
inline PolarizationCertificate polarization_check(const GradedBilinearStructure& g) {
  auto c = evaluate_polarization(g);
  if (!c.criteria_agree())
    fail(ErrorCode::InvariantViolation, std::string("polarization criteria disagree: primitive criterion ") +
                                            (c.by_primitives() ? "passes" : "fails") + ", w criterion " +
                                            (c.by_w() ? "passes" : "fails"));
  return c;
}

struct MergeResult {
  GradedBilinearStructure merged;
  bool grading_is_monodromy = false;
  PolarizationCertificate polarization;
};

/// Regrades by l = l_i + l_j (kept in slot min(i,j), slot max(i,j)
/// removed) with N = N_i + N_j, then re-verifies the Lefschetz and
/// polarization properties of the result.
inline MergeResult merge_slots(const GradedBilinearStructure& g, std::size_t i, std::size_t j) {
  require(i < g.slots() && j < g.slots() && i != j, ErrorCode::InvalidArgument, "merge: bad slot pair");
  require(polarization_check(g).polarized(), ErrorCode::PreconditionFailed, "merge: input is not polarized");
  const std::size_t keep = std::min(i, j), drop = std::max(i, j);
  GradedSpace space = g.space.regraded(g.slots() - 1, [&](const Multidegree& l) {
    Multidegree m = l;
    m[keep] = l[i] + l[j];
    m.erase(m.begin() + static_cast<std::ptrdiff_t>(drop));
    return m;
  });
  std::vector<NilpotentOperator> ns;
  for (std::size_t s = 0; s < g.slots(); ++s) {
    if (s == drop) continue;
    if (s == keep) ns.emplace_back(g.ns[i].matrix() + g.ns[j].matrix());
    else ns.push_back(g.ns[s]);
  }
  MergeResult out{make_structure(std::move(space), std::move(ns), g.form, g.center), false, {}};
  out.grading_is_monodromy = grading_is_monodromy(out.merged);
  if (out.grading_is_monodromy) {
    out.polarization = polarization_check(out.merged);
  } else {
    out.polarization.primitive_positive = false;
    out.polarization.w_positive = false;
  }
  return out;
}

}  // namespace hodge
