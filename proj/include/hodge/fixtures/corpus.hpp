#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hodge/fixtures/fixtures.hpp"
#include "hodge/io/task.hpp"

namespace hodge {

/// A named example with the check outcomes it must produce when run.
struct FixtureRecord {
  std::string name;
  std::string parameters;
  Task task;
  /// (check name, expected outcome) pairs, matched against run_task.
  std::vector<std::pair<std::string, bool>> expected;
};

namespace corpus_detail {

inline std::string sizes_name(const std::vector<std::size_t>& sizes) {
  std::string s;
  for (auto m : sizes) s += "-" + std::to_string(m);
  return s;
}

inline MultiFiltration flags_of_lines(const std::vector<QVector>& lines) {
  std::vector<Filtration> fs;
  const std::size_t n = lines.front().size();
  for (const auto& v : lines) fs.push_back(Filtration::two_step(QSubspace::span(n, {v}), Rational(0), Rational(1)));
  return MultiFiltration(n, fs);
}

inline std::vector<NilpotentOperator> ops(std::initializer_list<QMatrix> ms) {
  std::vector<NilpotentOperator> out;
  for (const auto& m : ms) out.emplace_back(m);
  return out;
}

inline MonodromicModule module_of(const RationalIndex& alpha, std::vector<NilpotentOperator> ns) {
  MonodromicModule m(alpha.size());
  m.add(alpha, std::move(ns));
  return m;
}

}  // namespace corpus_detail

/// Commuting pair on Q^4 whose nested relative monodromy filtration exists
/// but differs from W(N_1 + N_2).
inline std::vector<NilpotentOperator> mf_failing_pair() {
  return corpus_detail::ops({QMatrix{{0, 1, -1, 1}, {0, 0, -1, 1}, {0, 0, 0, -1}, {0, 0, 0, 0}},
                             QMatrix{{0, -1, 0, -1}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}}});
}

inline std::vector<FixtureRecord> fixture_corpus() {
  using namespace corpus_detail;
  std::vector<FixtureRecord> out;
  const std::vector<std::pair<std::string, bool>> lefschetz_ok{
      {"grading-is-monodromy", true}, {"sl2-brackets", true}, {"criteria-agree", true}, {"polarized", true}};

  for (std::size_t k = 0; k <= 5; ++k) {
    auto v = fixture_Vk(k);
    auto exp = lefschetz_ok;
    exp.emplace_back("hodge-typing", true);
    out.push_back({"V" + std::to_string(k), "k=" + std::to_string(k), {"V" + std::to_string(k), LefschetzTask{v.structure, v.hodge}}, exp});
  }
  out.push_back({"V2-table", "k=2", {"V2-table", VkTask{2}},
                 {{"monodromy-equals-W", true}, {"primitive-top", true}, {"polarized", true}, {"hodge-typing", true}}});

  const std::vector<std::vector<std::size_t>> tensors{{1, 1}, {2, 2}, {3, 2}, {1, 3}, {2, 3, 2}, {2, 2, 2}, {4, 4}};
  for (const auto& sizes : tensors) {
    auto g = fixture_tensor_jordan(sizes);
    auto exp = lefschetz_ok;
    exp.emplace_back("w-commute", true);
    for (std::size_t i = 0; i < sizes.size(); ++i)
      for (std::size_t j = i + 1; j < sizes.size(); ++j)
        exp.emplace_back("merge-" + std::to_string(i + 1) + "-" + std::to_string(j + 1), true);
    std::string params = "sizes=" + sizes_name(sizes).substr(1);
    out.push_back({"tensor-jordan" + sizes_name(sizes), params, {"tensor-jordan" + sizes_name(sizes), LefschetzTask{g, std::nullopt}}, exp});
    out.push_back({"mf-tensor" + sizes_name(sizes), params, {"mf-tensor" + sizes_name(sizes), MfTask{g.ns}},
                   {{"nesting-exists", true}, {"mf-holds", true}, {"graded-sum", true}}});
  }
  {
    auto g = fixture_tensor_jordan({2, 2});
    g.form = Rational(-1) * g.form;
    out.push_back({"tensor-jordan-2-2-negated", "sizes=2-2, form negated", {"tensor-jordan-2-2-negated", LefschetzTask{g, std::nullopt}},
                   {{"grading-is-monodromy", true}, {"criteria-agree", true}, {"polarized", false}}});
  }
  for (int sign : {1, -1}) {
    // basis (a, b): a in degree 1, b in degree -1, N a = b, k(a, b) = sign
    QMatrix n(2, 2), k(2, 2);
    n(1, 0) = 1;
    k(0, 1) = sign;
    k(1, 0) = -sign;
    GradedSpace s(2, 1, {{{1}, QSubspace::coordinate(2, {0})}, {{-1}, QSubspace::coordinate(2, {1})}});
    const std::string name = sign > 0 ? "lefschetz-two-dim" : "lefschetz-two-dim-flipped";
    out.push_back({name, "k(a,b)=" + std::to_string(sign), {name, LefschetzTask{make_structure(s, {NilpotentOperator(n)}, k), std::nullopt}},
                   {{"criteria-agree", true}, {"polarized", sign > 0}}});
  }

  out.push_back({"mf-single-block", "p=1, J_3", {"mf-single-block", MfTask{ops({vk_shift(2)})}}, {{"mf-holds", true}}});
  out.push_back({"mf-failing-pair", "dim 4", {"mf-failing-pair", MfTask{mf_failing_pair()}},
                 {{"nesting-exists", true}, {"mf-holds", false}}});
  out.push_back({"mf-opposite-pair", "N_2 = -N_1 = -J_2", {"mf-opposite-pair", MfTask{ops({vk_shift(1), Rational(-1) * vk_shift(1)})}},
                 {{"nesting-exists", true}, {"mf-holds", false}}});
  {
    QMatrix n1(3, 3), n2(3, 3);
    n1(1, 0) = 1;
    n2(2, 0) = 1;
    out.push_back({"mf-nesting-missing", "N_1 a = b, N_2 a = c", {"mf-nesting-missing", MfTask{ops({n1, n2})}},
                   {{"nesting-exists", false}, {"mf-holds", false}}});
  }

  out.push_back({"monodromy-jordan-3-2-1", "blocks 3,2,1", {"monodromy-jordan-3-2-1", MonodromyTask{direct_sum(
                     direct_sum(fixture_tensor_jordan({3}), fixture_tensor_jordan({2})), fixture_tensor_jordan({1})).ns.front(), Rational(0)}},
                 {{"monodromy-axioms", true}}});
  {
    NilpotentOperator n(QMatrix{{0, 0}, {1, 0}});
    out.push_back({"relmono-counterexample", "N a = b, L: span(b) at 0, all at 1",
                   {"relmono-counterexample", RelativeMonodromyTask{n, Filtration::two_step(QSubspace::coordinate(2, {1}), Rational(0), Rational(1))}},
                   {{"exists", false}}});
    out.push_back({"relmono-trivial-L", "N a = b, L trivial at 3", {"relmono-trivial-L", RelativeMonodromyTask{n, Filtration::trivial(2, Rational(3))}},
                   {{"exists", true}, {"relative-monodromy-axioms", true}}});
  }

  const auto three = flags_of_lines({{1, 0}, {0, 1}, {1, 1}});
  out.push_back({"three-lines", "lines (1,0), (0,1), (1,1) in Q^2", {"three-lines", CompatTask{three}},
                 {{"hypercomplex-exact", false}, {"rees-flat", false}, {"algorithms-agree", true}}});
  out.push_back({"two-lines", "lines (1,0), (1,1) in Q^2", {"two-lines", CompatTask{flags_of_lines({{1, 0}, {1, 1}})}},
                 {{"hypercomplex-exact", true}, {"rees-flat", true}, {"algorithms-agree", true}, {"iterated-gradeds-invariant", true}}});
  out.push_back({"coordinate-lines", "coordinate lines in Q^3", {"coordinate-lines", CompatTask{flags_of_lines({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})}},
                 {{"hypercomplex-exact", true}, {"rees-flat", true}, {"algorithms-agree", true}, {"iterated-gradeds-invariant", true}}});
  out.push_back({"rees-three-lines", "lines (1,0), (0,1), (1,1) in Q^2", {"rees-three-lines", ReesTask{three}},
                 {{"commuting-squares", true}, {"flat", false}, {"flatness-agrees-with-hypercomplex", true}}});
  out.push_back({"koszul-torsion", "x_1 = id, x_2 = 0 on [0,1]^2",
                 {"koszul-torsion", KoszulTask{ReesModule::build({0, 0}, {1, 1}, [](const LatticePoint&) { return std::size_t{1}; },
                                                                 [](std::size_t i, const LatticePoint&) { return i == 0 ? QMatrix{{1}} : QMatrix{{0}}; }),
                                               {}}},
                 {{"d-squared-zero", true}, {"regular-sequence", false}}});
  out.push_back({"koszul-constant", "free rank 2 on [0,1]^2",
                 {"koszul-constant", KoszulTask{ReesModule::build({0, 0}, {1, 1}, [](const LatticePoint&) { return std::size_t{2}; },
                                                                  [](std::size_t, const LatticePoint&) { return QMatrix::identity(2); }),
                                                {1, 0}}},
                 {{"d-squared-zero", true}, {"regular-sequence", true}}});

  {
    const QMatrix j2 = vk_shift(1), id = QMatrix::identity(2);
    const RationalIndex a2{Rational(-1, 2), Rational(-1, 3)};
    out.push_back({"nilsson-j2xj2", "alpha=(-1/2,-1/3), k=(1,1)",
                   {"nilsson-j2xj2", NilssonTask{module_of(a2, ops({kronecker(j2, id), kronecker(id, j2)})), a2, {1, 1}}},
                   {{"squares-commute", true}, {"hypothesis", true}, {"nils-isomorphism", true}, {"two-paths", true}}});
    const RationalIndex a1{Rational(-1)};
    out.push_back({"nilsson-below-degree", "alpha=(-1), J_2, k=(0)", {"nilsson-below-degree", NilssonTask{module_of(a1, ops({j2})), a1, {0}}},
                   {{"hypothesis", false}, {"nils-isomorphism", false}}});
    out.push_back({"nilsson-trivial", "alpha=(-1), N=0, k=(0)", {"nilsson-trivial", NilssonTask{module_of(a1, ops({QMatrix(1, 1)})), a1, {0}}},
                   {{"hypothesis", true}, {"nils-isomorphism", true}}});
  }
  return out;
}

inline const FixtureRecord* find_fixture(const std::vector<FixtureRecord>& corpus, const std::string& name) {
  for (const auto& f : corpus)
    if (f.name == name) return &f;
  return nullptr;
}

}  // namespace hodge
