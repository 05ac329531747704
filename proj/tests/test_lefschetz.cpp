#include <catch_amalgamated.hpp>

#include "hodge/fixtures/fixtures.hpp"

using namespace hodge;

namespace {

GradedBilinearStructure two_dim(const Rational& kab) {
  // basis (a, b), a in degree 1, b in degree -1, N a = b
  QMatrix n(2, 2);
  n(1, 0) = 1;
  QMatrix k(2, 2);
  k(0, 1) = kab;
  k(1, 0) = -kab;
  GradedSpace s(2, 1, {{{1}, QSubspace::coordinate(2, {0})}, {{-1}, QSubspace::coordinate(2, {1})}});
  return make_structure(s, {NilpotentOperator(n)}, k);
}

GradedBilinearStructure concentrated(const QMatrix& n, const QMatrix& form) {
  GradedSpace s(n.rows(), 1, {{{0}, QSubspace::full(n.rows())}});
  return GradedBilinearStructure{s, {NilpotentOperator(n)}, form, 0};
}

std::map<Multidegree, std::size_t> dims(const std::map<Multidegree, QSubspace>& m) {
  std::map<Multidegree, std::size_t> out;
  for (const auto& [l, s] : m) out[l] = s.dim();
  return out;
}

}  // namespace

TEST_CASE("V_k gradings are monodromy gradings") {
  for (std::size_t k = 0; k <= 5; ++k) CHECK(grading_is_monodromy(fixture_Vk(k).structure));
  CHECK_FALSE(grading_is_monodromy(concentrated(vk_shift(1), QMatrix::identity(2)), 0));
}

TEST_CASE("sl2 completion of V_k follows the bracket recurrence") {
  auto v1 = sl2_complete(fixture_Vk(1).structure, 0);
  CHECK(v1.x == QMatrix{{0, 0}, {1, 0}});
  CHECK(v1.h == QMatrix{{-1, 0}, {0, 1}});
  for (std::size_t k = 0; k <= 5; ++k) {
    auto a = sl2_complete(fixture_Vk(k).structure, 0);
    QMatrix expected(k + 1, k + 1);
    for (std::size_t l = 0; l < k; ++l) expected(l + 1, l) = static_cast<long>((k - l) * (l + 1));
    CHECK(a.x == expected);
    CHECK_FALSE(a.bracket_defect());
  }
  auto zero = sl2_complete(concentrated(QMatrix(2, 2), QMatrix::identity(2)), 0);
  CHECK(zero.x.is_zero());
  CHECK(zero.h.is_zero());
}

TEST_CASE("sl2 completion requires a monodromy grading") {
  try {
    sl2_complete(concentrated(vk_shift(1), QMatrix::identity(2)), 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }
}

TEST_CASE("w operator") {
  CHECK(weil_w(fixture_Vk(1).structure) == QMatrix{{0, 1}, {-1, 0}});
  CHECK(weil_w(concentrated(QMatrix(3, 3), QMatrix::identity(3))) == QMatrix::identity(3));
  auto g = fixture_tensor_jordan({2, 2});
  CHECK(weil_w(g, {0, 1}) == weil_w(g, {1, 0}));
}

TEST_CASE("polarization of the two-dimensional Lefschetz structure") {
  auto good = polarization_check(two_dim(Rational(1)));
  CHECK(good.polarized());
  CHECK(good.criteria_agree());
  auto bad = polarization_check(two_dim(Rational(-1)));
  CHECK_FALSE(bad.polarized());
  CHECK_FALSE(bad.by_primitives());
  CHECK_FALSE(bad.by_w());
  CHECK(bad.failing_primitive == Multidegree{1});
}

TEST_CASE("polarization with N = 0 is positivity of the form") {
  CHECK(polarization_check(concentrated(QMatrix(2, 2), QMatrix{{2, 1}, {1, 1}})).polarized());
  auto c = polarization_check(concentrated(QMatrix(2, 2), QMatrix{{1, 2}, {2, 1}}));
  CHECK_FALSE(c.polarized());
  CHECK(c.failing_w_pivot == 1u);
}

TEST_CASE("isotropy is part of both criteria") {
  // symmetric, not isotropic, positive on the primitive part
  QMatrix k{{0, 1}, {1, 0}};
  QMatrix n(2, 2);
  n(1, 0) = 1;
  GradedSpace s(2, 1, {{{1}, QSubspace::coordinate(2, {0})}, {{-1}, QSubspace::coordinate(2, {1})}});
  auto c = evaluate_polarization(make_structure(s, {NilpotentOperator(n)}, k));
  CHECK_FALSE(c.isotropic);
  CHECK(c.primitive_positive);
  CHECK_FALSE(c.polarized());
  CHECK(c.criteria_agree());
}

TEST_CASE("V_k is polarized with the signed form but the verbatim form is not isotropic") {
  for (std::size_t k = 0; k <= 5; ++k) {
    auto v = fixture_Vk(k);
    CHECK(polarization_check(v.structure).polarized());
    auto p = primitive_parts(v.structure);
    REQUIRE(p.size() == 1);
    CHECK(p.begin()->first == Multidegree{static_cast<std::int64_t>(k)});
    CHECK(p.begin()->second.dim() == 1);
    const QMatrix& n = v.n.matrix();
    CHECK((n.transpose() * v.q_verbatim + v.q_verbatim * n).is_zero() == (k == 0));
  }
}

TEST_CASE("J2 x J2: primitive parts, merge and commuting w") {
  auto g = fixture_tensor_jordan({2, 2});
  CHECK(grading_is_monodromy(g, 0));
  CHECK(grading_is_monodromy(g, 1));
  CHECK(dims(primitive_parts(g)) == std::map<Multidegree, std::size_t>{{{1, 1}, 1}});
  CHECK(polarization_check(g).polarized());
  auto m = merge_slots(g, 0, 1);
  CHECK(m.grading_is_monodromy);
  CHECK(m.polarization.polarized());
  CHECK(dims(m.merged.space.pieces()) == std::map<Multidegree, std::size_t>{{{-2}, 1}, {{0}, 2}, {{2}, 1}});
  CHECK(dims(primitive_parts(m.merged)) == std::map<Multidegree, std::size_t>{{{0}, 1}, {{2}, 1}});
}

TEST_CASE("merging a zero slot only re-indexes the grading") {
  auto g = fixture_tensor_jordan({3, 1});
  auto m = merge_slots(g, 0, 1);
  CHECK(m.polarization.polarized());
  CHECK(m.merged.space == fixture_tensor_jordan({3}).space);
  CHECK(m.merged.ns.front() == g.ns.front());
}

TEST_CASE("merging two slots of a triple tensor stays polarized") {
  auto g = fixture_tensor_jordan({2, 2, 2});
  auto m = merge_slots(g, 0, 1);
  CHECK(m.grading_is_monodromy);
  CHECK(m.polarization.polarized());
  CHECK(m.merged.slots() == 2);
  CHECK(weil_w(m.merged, {0, 1}) == weil_w(m.merged, {1, 0}));
}

TEST_CASE("merge requires a polarized input") {
  try {
    merge_slots(detail::tensor_blocks({2, 2}, QMatrix{{-1}}), 0, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }
}

TEST_CASE("hodge typing of V_k") {
  for (std::size_t k = 0; k <= 5; ++k) {
    auto v = fixture_Vk(k);
    CHECK(hodge_typing_check(v.structure, v.hodge).ok);
  }
  auto v = fixture_Vk(2);
  auto wrong = v.hodge;
  wrong.begin()->second.weight += 1;
  try {
    hodge_typing_check(v.structure, wrong);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WeightMismatch);
  }
  auto n0 = concentrated(QMatrix(2, 2), QMatrix::identity(2));
  RationalHodgeStructure h0;
  h0.pieces.emplace(HodgeType{0, 0}, complexify(QSubspace::full(2)));
  CHECK(hodge_typing_check(n0, {{{0}, h0}}).ok);
}

TEST_CASE("hodge typing detects a misaligned piece") {
  // V_1 ⊗ Q^2, basis v0e1, v0e2, v1e1, v1e2; H_1 of weight 2, H_{-1} of weight 0
  auto g = detail::tensor_blocks({2}, QMatrix::identity(2));
  g.center = 1;
  RationalHodgeStructure low;
  low.weight = 0;
  low.pieces.emplace(HodgeType{0, 0}, complexify(g.space.piece({-1})));
  RationalHodgeStructure high;
  high.weight = 2;
  high.pieces.emplace(HodgeType{1, 1}, complexify(g.space.piece({1})));
  CHECK(hodge_typing_check(g, {{{-1}, low}, {{1}, high}}).ok);

  const GaussianRational i(Rational(0), Rational(1));
  GVector v20{0, 0, 1, i};
  RationalHodgeStructure twisted;
  twisted.weight = 2;
  twisted.pieces.emplace(HodgeType{2, 0}, GSubspace::span(4, {v20}));
  twisted.pieces.emplace(HodgeType{0, 2}, conjugate(GSubspace::span(4, {v20})));
  CHECK_FALSE(twisted.defect(g.space.piece({1})));
  auto rep = hodge_typing_check(g, {{{-1}, low}, {{1}, twisted}});
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.failure);
  CHECK(rep.failure->find("does not map type (0,2)") != std::string::npos);
}

TEST_CASE("random graded structures: criteria agree and match the construction") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 80; ++trial) {
    auto r = random_graded_structure(rng, 1 + trial % 2, 8);
    INFO(r.description);
    const auto& g = r.g;
    for (const auto& [l, s] : g.space.pieces()) {
      Multidegree neg = l;
      for (auto& x : neg) x = -x;
      CHECK(g.space.piece(neg).dim() == s.dim());
    }
    REQUIRE(grading_is_monodromy(g));
    auto c = polarization_check(g);
    CHECK(c.polarized() == r.expected_polarized);
    // hard Lefschetz bookkeeping: orbits of primitive parts rebuild H
    std::map<Multidegree, std::size_t> rebuilt;
    for (const auto& [m, p] : primitive_parts(g)) {
      std::vector<std::int64_t> j(g.slots(), 0);
      while (true) {
        Multidegree l = m;
        for (std::size_t s = 0; s < l.size(); ++s) l[s] -= 2 * j[s];
        rebuilt[l] += p.dim();
        std::size_t s = 0;
        while (s < j.size() && ++j[s] > m[s]) j[s++] = 0;
        if (s == j.size()) break;
      }
    }
    CHECK(rebuilt == dims(g.space.pieces()));
    for (std::size_t s = 0; s < g.slots(); ++s) {
      auto a = sl2_complete(g, s);
      CHECK_FALSE(a.bracket_defect());
      for (std::size_t t = 0; t < g.slots(); ++t) {
        if (t == s) continue;
        CHECK(commutator(a.x, g.ns[t].matrix()).is_zero());
        CHECK(commutator(a.x, g.space.grading_operator(t)).is_zero());
      }
    }
    if (g.slots() == 2) {
      CHECK(weil_w(g, {0, 1}) == weil_w(g, {1, 0}));
      if (c.polarized()) {
        auto m = merge_slots(g, 0, 1);
        CHECK(m.grading_is_monodromy);
        CHECK(m.polarization.polarized());
      }
    }
  }
}

TEST_CASE("graded structure validation") {
  QMatrix n(2, 2);
  n(1, 0) = 1;
  GradedSpace s(2, 1, {{{1}, QSubspace::coordinate(2, {0})}, {{-1}, QSubspace::coordinate(2, {1})}});
  CHECK_THROWS_AS(make_structure(s, {NilpotentOperator(n)}, QMatrix::identity(2)), Error);
  CHECK_THROWS_AS(GradedSpace(2, 1, {{{0}, QSubspace::coordinate(2, {0})}}), Error);
  CHECK_THROWS_AS(make_structure(s, {NilpotentOperator(n.transpose())}, QMatrix{{0, 1}, {-1, 0}}), Error);
}
