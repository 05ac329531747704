#include <catch_amalgamated.hpp>

#include "hodge/rees/koszul.hpp"
#include "support/random.hpp"

using namespace hodge;
using namespace hodge::testing;

namespace {

MultiFiltration three_lines() {
  std::vector<Filtration> fs;
  for (auto v : {QVector{1, 0}, QVector{0, 1}, QVector{1, 1}})
    fs.push_back(Filtration::two_step(QSubspace::span(2, {v}), Rational(0), Rational(1)));
  return MultiFiltration(2, fs);
}

/// Free rank-d module on the box: every piece Q^d, every map the identity.
ReesModule constant_module(std::size_t vars, std::size_t d) {
  LatticePoint lo(vars, 0), hi(vars, 1);
  return ReesModule::build(
      lo, hi, [&](const LatticePoint&) { return d; },
      [&](std::size_t, const LatticePoint&) { return QMatrix::identity(d); });
}

/// Two variables, box [0,1]^2, all pieces of dimension 1; x_1 is the
/// identity and x_2 is zero.
ReesModule torsion_module() {
  return ReesModule::build(
      {0, 0}, {1, 1}, [](const LatticePoint&) { return std::size_t{1}; },
      [](std::size_t i, const LatticePoint&) { return i == 0 ? QMatrix{{1}} : QMatrix{{0}}; });
}

}  // namespace

TEST_CASE("rees module of a single flag") {
  auto l = QSubspace::coordinate(2, {1});
  MultiFiltration mf(2, {Filtration::two_step(l, Rational(0), Rational(1))});
  auto r = rees_of(mf);
  CHECK(r.lo() == LatticePoint{-1});
  CHECK(r.hi() == LatticePoint{2});
  CHECK(r.piece_dim({-5}) == 0);
  CHECK(r.piece_dim({-1}) == 0);
  CHECK(r.piece_dim({0}) == 1);
  CHECK(r.piece_dim({1}) == 2);
  CHECK(r.piece_dim({9}) == 2);
  CHECK(*r.embedded_piece({0}) == l);
  CHECK(rank(r.structure_map(0, {0})) == 1);
  CHECK(r.structure_map(0, {5}) == QMatrix::identity(2));
}

TEST_CASE("rees module of two lines") {
  auto l1 = QSubspace::coordinate(2, {0});
  auto l2 = QSubspace::coordinate(2, {1});
  MultiFiltration mf(2, {Filtration::two_step(l1, Rational(0), Rational(1)),
                         Filtration::two_step(l2, Rational(0), Rational(1))});
  auto r = rees_of(mf);
  // lattice coordinates coincide with the indices here
  CHECK(r.piece_dim({0, 0}) == 0);
  CHECK(*r.embedded_piece({1, 0}) == l2);
  CHECK(*r.embedded_piece({0, 1}) == l1);
  CHECK(r.embedded_piece({1, 1})->is_full());
  CHECK(r.piece_dim({-1, 3}) == 0);
  CHECK(is_flat(r).flat);
}

TEST_CASE("trivial filtrations give a constant module") {
  MultiFiltration mf(3, {Filtration::trivial(3), Filtration::trivial(3)});
  auto r = rees_of(mf);
  CHECK(r.piece_dim({0, 0}) == 3);
  CHECK(r.piece_dim({-1, 0}) == 0);
  CHECK(r.structure_map(1, {0, 0}) == QMatrix::identity(3));
}

TEST_CASE("structure maps must commute") {
  CHECK_THROWS_AS(ReesModule::build(
                      {0, 0}, {1, 1}, [](const LatticePoint&) { return std::size_t{1}; },
                      [](std::size_t i, const LatticePoint& k) {
                        return (i == 0 && k[1] == 0) ? QMatrix{{2}} : QMatrix{{1}};
                      }),
                  Error);
}

TEST_CASE("koszul homology of a constant module is a resolution") {
  auto r = constant_module(3, 2);
  for (std::vector<std::size_t> seq : {std::vector<std::size_t>{0}, {1, 2}, {2, 0, 1}}) {
    auto h = koszul_homology(r, seq);
    CHECK(h.d_squared_zero);
    CHECK(h.resolution());
    // H^0 is Q^2 at the corner of the sequence directions, repeated over
    // the two box points of every other direction
    CHECK(h.totals[0] == 2 * (std::size_t{1} << (3 - seq.size())));
  }
  CHECK(is_regular_sequence(r, {2, 1, 0}).regular);
  CHECK(is_flat(r).flat);
  CHECK_THROWS_AS(koszul_homology(r, {}), Error);
  CHECK_THROWS_AS(koszul_homology(r, {0, 0}), Error);
  CHECK_THROWS_AS(koszul_homology(r, {3}), Error);
}

TEST_CASE("three distinct lines: koszul homology, regularity, flatness") {
  auto r = rees_of(three_lines());
  auto h = koszul_homology(r, {0, 1, 2});
  CHECK_FALSE(h.resolution());
  CHECK(h.totals[1] > 0);
  std::vector<std::size_t> perm{0, 1, 2};
  int failing = 0;
  do {
    if (!is_regular_sequence(r, perm).regular) ++failing;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(failing > 0);
  auto flat = is_flat(r);
  CHECK_FALSE(flat.flat);
  CHECK(flat.failing_permutation);
  CHECK(flat.failing_subset == std::vector<std::size_t>{0, 1, 2});
  CHECK_FALSE(compatibility_via_flatness(three_lines()).compatible);
}

TEST_CASE("torsion in one variable breaks regularity") {
  auto r = torsion_module();
  auto both = is_regular_sequence(r, {0, 1});
  CHECK_FALSE(both.regular);
  CHECK(both.witness->position == 1);
  auto alone = is_regular_sequence(r, {1});
  CHECK_FALSE(alone.regular);
  CHECK(alone.witness->position == 0);
  CHECK(alone.witness->degree == LatticePoint{0, 0});
  CHECK(is_regular_sequence(r, {0}).regular);
  CHECK_FALSE(is_flat(r).flat);
}

TEST_CASE("koszul homology does not depend on the ordering") {
  Rng rng(31);
  for (int t = 0; t < 15; ++t) {
    auto r = rees_of(random_multifiltration(rng, 3, 3, 2));
    auto a = koszul_homology(r, {0, 1, 2});
    auto b = koszul_homology(r, {2, 0, 1});
    CHECK(a.totals == b.totals);
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) CHECK(a.cells[i].homology == b.cells[i].homology);
  }
}

TEST_CASE("flatness agrees with the hypercomplex criterion") {
  Rng rng(37);
  int incompatible = 0;
  for (int t = 0; t < 40; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 3));
    const auto count = static_cast<std::size_t>(uniform(rng, 2, 3));
    auto mf = random_multifiltration(rng, n, count, 3);
    const bool hyper = compatible_filtrations(mf).compatible;
    const auto flat = compatibility_via_flatness(mf);
    REQUIRE(hyper == flat.compatible);
    REQUIRE(flat.flatness.by_permutations == flat.flatness.by_subsets);
    if (!hyper) ++incompatible;
  }
  CHECK(incompatible > 0);
}
