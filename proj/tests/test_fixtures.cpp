#include <catch_amalgamated.hpp>

#include "hodge/fixtures/corpus.hpp"
#include "hodge/io/run.hpp"
#include "support/monodromy_oracle.hpp"
#include "support/oracles.hpp"

using namespace hodge;

namespace {

// V_k rebuilt entry by entry from its defining formulas.
struct VkOracle {
  std::size_t k;
  QMatrix n, q, signed_form;

  explicit VkOracle(std::size_t k_) : k(k_), n(k_ + 1, k_ + 1), q(k_ + 1, k_ + 1), signed_form(k_ + 1, k_ + 1) {
    for (std::size_t col = 0; col <= k; ++col)
      for (std::size_t row = 0; row <= k; ++row) {
        n(row, col) = row + 1 == col ? 1 : 0;
        q(row, col) = row + col == k ? 1 : 0;
        signed_form(row, col) = row + col == k ? ((k - row) % 2 == 0 ? 1 : -1) : 0;
      }
  }
};

bool contains_basis_vector(const QSubspace& s, std::size_t n, std::size_t l) {
  QVector e(n);
  e[l] = 1;
  return s.contains(e);
}

}  // namespace

TEST_CASE("V_k fixture matches its formulas") {
  for (std::size_t k = 0; k <= 6; ++k) {
    CAPTURE(k);
    const VkOracle o(k);
    const auto v = fixture_Vk(k);
    const std::size_t d = k + 1;
    CHECK(v.n.matrix() == o.n);
    CHECK(v.q_verbatim == o.q);
    CHECK(v.structure.form == o.signed_form);
    CHECK(v.structure.center == static_cast<std::int64_t>(k));
    REQUIRE(v.f.size() == k + 2);
    for (std::size_t p = 0; p <= k + 1; ++p) {
      CHECK(v.f[p].dim() == d - std::min(p, d));
      for (std::size_t l = 0; l <= k; ++l) CHECK(contains_basis_vector(v.f[p], d, l) == (l >= p));
    }
    for (std::int64_t i = -1; i <= 2 * static_cast<std::int64_t>(k) + 1; ++i) {
      const auto wi = v.w.at(Rational(i));
      for (std::size_t l = 0; l <= k; ++l) CHECK(contains_basis_vector(wi, d, l) == (2 * static_cast<std::int64_t>(l) <= i));
    }
    for (std::int64_t i = -1; i <= 2 * static_cast<std::int64_t>(k); ++i)
      CHECK(v.w.at(Rational(i)) == testing::monodromy_by_formula(v.n, i - static_cast<std::int64_t>(k)));
    for (const auto& [deg, h] : v.hodge) {
      const std::int64_t l = (deg[0] + static_cast<std::int64_t>(k)) / 2;
      CHECK(h.weight == 2 * l);
      REQUIRE(h.pieces.size() == 1);
      CHECK(h.pieces.begin()->first == HodgeType{l, l});
    }
    // The signed pairing is isotropic for N; the stated one only for k = 0.
    CHECK((o.n.transpose() * o.signed_form + o.signed_form * o.n).is_zero());
    CHECK((o.n.transpose() * o.q + o.q * o.n).is_zero() == (k == 0));
    // Polarization of the top primitive: k(v_k, N^k v_k) = k(v_k, v_0) = 1.
    CHECK(o.signed_form(k, 0) == 1);
  }
}

TEST_CASE("every corpus record produces its expected checks") {
  const auto corpus = fixture_corpus();
  std::set<std::string> names;
  for (const auto& f : corpus) {
    CAPTURE(f.name);
    CHECK(names.insert(f.name).second);
    CHECK(f.task.label == f.name);
    const auto r = run_task(f.task);
    REQUIRE_FALSE(r.error);
    for (const auto& [check, expected] : f.expected) {
      CAPTURE(check);
      const Check* c = r.find(check);
      REQUIRE(c != nullptr);
      CHECK(c->passed == expected);
    }
  }
  CHECK(find_fixture(corpus, "V3") != nullptr);
  CHECK(find_fixture(corpus, "nope") == nullptr);
}

TEST_CASE("the failing pair: nested filtration differs from the joint one") {
  auto ns = mf_failing_pair();
  REQUIRE(ns[0].matrix() * ns[1].matrix() == ns[1].matrix() * ns[0].matrix());
  NilpotentOperator sum(ns[0].matrix() + ns[1].matrix());
  auto res = mf_property(ns);
  REQUIRE(res.nested);
  bool differs = false;
  for (std::int64_t l = -4; l <= 4; ++l) {
    CHECK(res.joint.filtration.at(Rational(l)) == testing::monodromy_by_formula(sum, l));
    differs = differs || res.nested->filtration.at(Rational(l)) != res.joint.filtration.at(Rational(l));
  }
  CHECK(differs);
}

TEST_CASE("V_2 table report") {
  const auto r = run_task({"V2", VkTask{2}});
  REQUIRE(r.passed());
  REQUIRE(r.tables.size() == 5);
  const auto& basis = r.tables[0];
  REQUIRE(basis.rows.size() == 3);
  CHECK(basis.rows[0] == std::vector<std::string>{"0", "-2", "0", "(0,0)", "0", "0"});
  CHECK(basis.rows[2] == std::vector<std::string>{"2", "2", "v_1", "(2,2)", "2", "4"});
  CHECK(r.tables[2].rows[1] == std::vector<std::string>{"1", "-1"});
}
