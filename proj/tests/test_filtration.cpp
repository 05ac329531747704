#include <catch_amalgamated.hpp>

#include "hodge/filtration/compatibility.hpp"
#include "support/random.hpp"

using namespace hodge;
using namespace hodge::testing;

namespace {

QSubspace line(std::initializer_list<Rational> v) { return QSubspace::span(v.size(), {QVector(v)}); }

MultiFiltration lines_in_plane(const std::vector<QSubspace>& ls) {
  std::vector<Filtration> fs;
  for (const auto& l : ls) fs.push_back(Filtration::two_step(l, Rational(0), Rational(1)));
  return MultiFiltration(2, fs);
}

}  // namespace

TEST_CASE("index lattice phi is an order-preserving bijection") {
  auto lat = IndexLattice::covering({Rational(1, 3), Rational(-1, 2), Rational(2), Rational(7, 3)});
  CHECK(lat.period() == 3);
  CHECK(lat.at(0) == 0);
  CHECK(lat.at(1) == Rational(1, 3));
  CHECK(lat.at(2) == Rational(1, 2));
  CHECK(lat.at(-1) == Rational(-1, 2));
  for (std::int64_t k = -10; k < 10; ++k) {
    CHECK(lat.at(k) < lat.at(k + 1));
    CHECK(lat.index_of(lat.at(k)) == k);
  }
  CHECK_FALSE(lat.contains(Rational(1, 4)));
  try {
    lat.index_of(Rational(1, 4));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndexOutsideLattice);
  }
}

TEST_CASE("filtration construction and lookup") {
  QSubspace l = QSubspace::coordinate(2, {1});
  Filtration f = Filtration::two_step(l, Rational(0), Rational(1));
  CHECK(f.at(Rational(-1)).is_zero());
  CHECK(f.at(Rational(1, 2)) == l);
  CHECK(f.at(Rational(5)).is_full());
  CHECK(f.below(Rational(1)) == l);
  CHECK(f.graded(Rational(0)).dim() == 1);
  CHECK(f.graded(Rational(1, 2)).dim() == 0);
  CHECK(f.shifted(Rational(2)).at(Rational(2)) == l);
  CHECK(f.is_preserved_by(QMatrix{{0, 0}, {1, 0}}));
  CHECK_FALSE(f.is_preserved_by(QMatrix{{0, 1}, {0, 0}}));

  CHECK_THROWS_AS(Filtration::from_steps(2, {{Rational(0), l}}), Error);
  CHECK_THROWS_AS(Filtration::from_steps(2, {{Rational(1), l}, {Rational(0), QSubspace::full(2)}}), Error);
  CHECK_THROWS_AS(
      Filtration::from_steps(2, {{Rational(0), l}, {Rational(1), QSubspace::coordinate(2, {0})}, {Rational(2), QSubspace::full(2)}}),
      Error);
  // repeated spaces collapse to the first index
  Filtration g = Filtration::from_steps(2, {{Rational(0), QSubspace::zero(2)}, {Rational(1), l}, {Rational(2), l},
                                            {Rational(3), QSubspace::full(2)}});
  CHECK(g.jumps() == std::vector<Rational>{Rational(1), Rational(3)});
}

TEST_CASE("three distinct lines in a plane are incompatible") {
  auto mf = lines_in_plane({line({1, 0}), line({0, 1}), line({1, 1})});
  auto rep = compatible_filtrations(mf);
  REQUIRE_FALSE(rep.compatible);
  REQUIRE(rep.witness);
  CHECK(rep.failing_point == LatticePoint{0, 0, 0});
  CHECK(*rep.failing_indices == std::vector<Rational>{Rational(0), Rational(0), Rational(0)});
  CHECK(rep.witness->cell.size() == 3);
  // the hypercomplex of the three lines themselves
  auto direct = compatible_subobjects(QSubspace::full(2), {line({1, 0}), line({0, 1}), line({1, 1})});
  CHECK_FALSE(direct.compatible);
  CHECK(direct.witness->reason == rep.witness->reason);
}

TEST_CASE("at most two filtrations are always compatible") {
  Rng rng(21);
  for (int t = 0; t < 60; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 4));
    const auto count = static_cast<std::size_t>(uniform(rng, 1, 2));
    auto mf = random_multifiltration(rng, n, count);
    REQUIRE(compatible_filtrations(mf).compatible);
  }
}

TEST_CASE("split multifiltrations are compatible") {
  Rng rng(23);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 4;
    std::vector<Filtration> fs;
    for (int i = 0; i < 3; ++i) {
      // every step spanned by standard basis vectors
      std::vector<std::size_t> order{0, 1, 2, 3};
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<Filtration::Step> steps;
      for (std::size_t d = 1; d <= n; ++d)
        steps.push_back({Rational(static_cast<long>(d)), QSubspace::coordinate(n, {order.begin(), order.begin() + d})});
      fs.push_back(Filtration::from_steps(n, steps));
    }
    REQUIRE(compatible_filtrations(MultiFiltration(n, fs)).compatible);
  }
}

TEST_CASE("iterated gradeds of compatible families are permutation invariant") {
  Rng rng(29);
  int compatible_seen = 0;
  for (int t = 0; t < 40; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 4));
    const auto count = static_cast<std::size_t>(uniform(rng, 2, 3));
    auto mf = random_multifiltration(rng, n, count);
    if (!compatible_filtrations(mf).compatible) continue;
    ++compatible_seen;
    auto [lo, hi] = graded_box(mf);
    std::size_t total = 0;
    for_each_point(lo, hi, [&](const LatticePoint& k) {
      std::vector<Rational> idx;
      for (auto c : k) idx.push_back(mf.lattice().at(c));
      std::vector<std::size_t> perm(count);
      for (std::size_t i = 0; i < count; ++i) perm[i] = i;
      do {
        auto g = iterated_graded(mf, idx, perm);
        REQUIRE(g.agrees);
      } while (std::next_permutation(perm.begin(), perm.end()));
      total += graded_piece_at(mf, k).dim();
    });
    CHECK(total == n);
  }
  CHECK(compatible_seen > 10);
}

TEST_CASE("graded dimension count fails for three lines") {
  auto mf = lines_in_plane({line({1, 0}), line({0, 1}), line({1, 1})});
  auto [lo, hi] = graded_box(mf);
  std::size_t total = 0;
  for_each_point(lo, hi, [&](const LatticePoint& k) { total += graded_piece_at(mf, k).dim(); });
  CHECK(total == 3);
}

TEST_CASE("multifiltration arity and ambient checks") {
  auto f2 = Filtration::trivial(2);
  auto f3 = Filtration::trivial(3);
  CHECK_THROWS_AS(MultiFiltration(2, {f2, f3}), Error);
  auto mf = MultiFiltration(2, {f2, f2});
  CHECK_THROWS_AS(graded_piece(mf, {Rational(0)}), Error);
  CHECK_THROWS_AS(iterated_graded(mf, {Rational(0), Rational(0)}, {0, 0}), Error);
  CHECK(compatible_filtrations(MultiFiltration(2, {})).compatible);
}

TEST_CASE("row checks on subspaces agree with the induced-map computation") {
  Rng rng(31);
  for (int t = 0; t < 40; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 4));
    const auto count = static_cast<std::size_t>(uniform(rng, 2, 3));
    std::vector<QSubspace> subs;
    for (std::size_t i = 0; i < count; ++i) subs.push_back(random_subspace(rng, n, static_cast<std::size_t>(uniform(rng, 0, n))));
    Hypercomplex x(QSubspace::full(n), subs);
    std::size_t cells = 1;
    for (std::size_t i = 0; i < count; ++i) cells *= 3;
    for (std::size_t code = 0; code < cells; ++code) {
      CellIndex k(count);
      for (std::size_t i = count, c = code; i-- > 0; c /= 3) k[i] = static_cast<int>(c % 3) - 1;
      for (std::size_t i = 0; i < count; ++i) {
        if (k[i] != 0) continue;
        auto a = x.check_row(k, i), b = x.check_row_by_maps(k, i);
        REQUIRE(a.has_value() == b.has_value());
        if (a) {
          CHECK(a->reason == b->reason);
          CHECK(a->dim_left == b->dim_left);
          CHECK(a->dim_middle == b->dim_middle);
          CHECK(a->dim_right == b->dim_right);
        }
      }
    }
  }
}
