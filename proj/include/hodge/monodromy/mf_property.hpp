#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "hodge/filtration/compatibility.hpp"
#include "hodge/monodromy/relative.hpp"

namespace hodge {

enum class MfStatus { Holds, Fails, NestingDoesNotExist };

inline const char* to_string(MfStatus s) {
  switch (s) {
    case MfStatus::Holds: return "holds";
    case MfStatus::Fails: return "fails";
    case MfStatus::NestingDoesNotExist: return "nesting-does-not-exist";
  }
  return "?";
}

struct MfResult {
  MfStatus status = MfStatus::Holds;
  /// W(N_1, W(N_2, ..., W(N_p))) when every stage exists.
  std::optional<CenteredFiltration> nested;
  /// W(N_1 + ... + N_p).
  CenteredFiltration joint;
  /// Stage i (0-based operator index) at which W(N_i; ...) does not exist.
  std::optional<std::size_t> failing_operator;
  std::optional<NonExistence> certificate;
};

/// Nested filtration W(N_i, W(N_{i+1}, ..., W(N_p))) for i = 0 .. p-1,
/// folded right to left. Stops at the first stage that does not exist.
struct NestedFiltrations {
  std::vector<std::optional<CenteredFiltration>> stages;  // stages[i] for operator i
  std::optional<std::size_t> failing_operator;
  std::optional<NonExistence> certificate;
};

inline NestedFiltrations nested_filtrations(const std::vector<NilpotentOperator>& ns) {
  require(!ns.empty(), ErrorCode::InvalidArgument, "nested filtration: no operators");
  require_commuting(ns);
  NestedFiltrations out;
  out.stages.resize(ns.size());
  const std::size_t p = ns.size();
  out.stages[p - 1] = monodromy_filtration(ns[p - 1]);
  for (std::size_t i = p - 1; i-- > 0;) {
    auto r = relative_monodromy(ns[i], out.stages[i + 1]->filtration);
    if (!r.exists()) {
      out.failing_operator = i;
      out.certificate = r.certificate;
      return out;
    }
    out.stages[i] = r.filtration;
  }
  return out;
}

inline NilpotentOperator operator_sum(const std::vector<NilpotentOperator>& ns) {
  QMatrix s(ns.front().dim(), ns.front().dim());
  for (const auto& n : ns) s += n.matrix();
  return NilpotentOperator(std::move(s));
}

/// Property (MF): the nested filtration equals W(N_1 + ... + N_p).
inline MfResult mf_property(const std::vector<NilpotentOperator>& ns) {
  MfResult out;
  auto nested = nested_filtrations(ns);
  out.joint = monodromy_filtration(operator_sum(ns));
  if (nested.failing_operator) {
    out.status = MfStatus::NestingDoesNotExist;
    out.failing_operator = nested.failing_operator;
    out.certificate = nested.certificate;
    return out;
  }
  out.nested = nested.stages.front();
  out.status = out.nested->filtration == out.joint.filtration ? MfStatus::Holds : MfStatus::Fails;
  return out;
}

struct GradedSumRow {
  std::int64_t weight = 0;
  std::size_t nested_dim = 0;     // dim gr_l of the nested filtration
  std::size_t iterated_sum = 0;   // Σ_{k_1+...+k_p=l} dim gr^{W(N_1)}_{k_1} ... gr^{W(N_p)}_{k_p}
};

struct GradedSumDecomposition {
  std::vector<GradedSumRow> rows;
  bool holds = true;
};

/// Compares dim gr_l of `nested` with the sum over k_1+...+k_p = l of the
/// iterated graded dimensions of the monodromy filtrations W(N_i), taking
/// gr^{W(N_p)} first and gr^{W(N_1)} last.
inline GradedSumDecomposition graded_sum_decomposition(const std::vector<NilpotentOperator>& ns,
                                                       const CenteredFiltration& nested) {
  require(!ns.empty(), ErrorCode::InvalidArgument, "graded sum: no operators");
  require_commuting(ns);
  const std::size_t p = ns.size();
  std::vector<Filtration> ws;
  for (const auto& n : ns) ws.push_back(monodromy_filtration(n).filtration);
  MultiFiltration mf(ns.front().dim(), ws);
  std::vector<std::size_t> order;
  for (std::size_t i = p; i-- > 0;) order.push_back(i);
  std::map<std::int64_t, std::size_t> sums;
  LatticePoint lo(p), hi(p);
  for (std::size_t i = 0; i < p; ++i) {
    lo[i] = -static_cast<std::int64_t>(ns[i].degree());
    hi[i] = static_cast<std::int64_t>(ns[i].degree());
  }
  for_each_point(lo, hi, [&](const LatticePoint& k) {
    std::vector<Rational> idx;
    std::int64_t total = 0;
    for (auto c : k) {
      idx.push_back(Rational(c));
      total += c;
    }
    sums[total] += iterated_graded(mf, idx, order).iterated_dim;
  });
  for (const auto& j : nested.filtration.jumps()) {
    require(is_integer(j), ErrorCode::InvalidArgument, "graded sum: nested filtration has a non-integer jump");
    sums.try_emplace(static_cast<std::int64_t>(numerator_of(j)), 0);
  }
  GradedSumDecomposition out;
  for (const auto& [l, s] : sums) {
    GradedSumRow row{l, nested.graded_dim(Rational(l)), s};
    if (row.nested_dim != row.iterated_sum) out.holds = false;
    if (row.nested_dim || row.iterated_sum) out.rows.push_back(row);
  }
  return out;
}

}  // namespace hodge
