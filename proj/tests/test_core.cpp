#include <catch_amalgamated.hpp>

#include "hodge/core/forms.hpp"
#include "hodge/core/subspace.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace hodge;
using namespace hodge::testing;

TEST_CASE("rational text format round trips and rejects malformed input") {
  for (const char* s : {"0", "7", "-3", "3/4", "-22/7", "-123456789012345678901234567891/2"})
    CHECK(format_rational(parse_rational(s)) == s);
  for (const char* s : {"", "1/0", "2/4", "-0", "01", "1/-2", "1.5", "a", "3/", "/3", "1//2", " 1"}) {
    INFO(s);
    std::optional<ScalarParseError> err;
    CHECK_FALSE(try_parse_rational(s, err).has_value());
    CHECK(err.has_value());
    CHECK_THROWS_AS(parse_rational(s), Error);
  }
  std::optional<ScalarParseError> err;
  CHECK_FALSE(try_parse_rational("4/6", err).has_value());
  CHECK(err->message == "fraction is not reduced");
}

TEST_CASE("gaussian rationals") {
  GaussianRational z(Rational(1, 2), Rational(-3));
  GaussianRational w(Rational(2), Rational(1));
  CHECK(format_gaussian(z) == "1/2-3 i");
  CHECK(parse_gaussian(format_gaussian(z)) == z);
  CHECK(parse_gaussian("5") == GaussianRational(Rational(5), Rational(0)));
  CHECK((z * w) / w == z);
  CHECK(z * conj(z) == GaussianRational(z.norm(), Rational(0)));
  CHECK_THROWS_AS(parse_gaussian("1+2j"), Error);
}

TEST_CASE("rank agrees with fraction-free elimination") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto r = static_cast<std::size_t>(uniform(rng, 1, 6));
    const auto c = static_cast<std::size_t>(uniform(rng, 1, 6));
    // low rank products hit degenerate cases often
    const auto inner = static_cast<std::size_t>(uniform(rng, 1, 4));
    QMatrix m = random_matrix(rng, r, inner, 2, 3) * random_matrix(rng, inner, c, 2, 2);
    REQUIRE(rank(m) == bareiss_rank(m));
    auto ns = null_space(m);
    CHECK(ns.size() == c - rank(m));
    for (const auto& v : ns)
      for (const auto& x : m.apply(v)) CHECK(x == 0);
  }
}

TEST_CASE("inverse and solve") {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    QMatrix p = random_invertible(rng, 4);
    auto inv = inverse(p);
    REQUIRE(inv);
    CHECK(p * *inv == QMatrix::identity(4));
    QVector b = random_matrix(rng, 4, 1).col(0);
    auto x = solve(p, b);
    REQUIRE(x);
    CHECK(p.apply(*x) == b);
  }
  CHECK_FALSE(inverse(QMatrix{{1, 2}, {2, 4}}).has_value());
  CHECK_FALSE(solve(QMatrix{{1, 2}, {2, 4}}, QVector{1, 0}).has_value());
}

TEST_CASE("subspace lattice operations") {
  Rng rng(7);
  for (int t = 0; t < 150; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 6));
    QSubspace u = random_subspace(rng, n, static_cast<std::size_t>(uniform(rng, 0, n)));
    QSubspace w = random_subspace(rng, n, static_cast<std::size_t>(uniform(rng, 0, n)));
    QSubspace s = subspace_sum(u, w), i = subspace_intersect(u, w);
    CHECK(s.dim() + i.dim() == u.dim() + w.dim());
    CHECK(s.contains(u));
    CHECK(s.contains(w));
    CHECK(u.contains(i));
    CHECK(w.contains(i));
    CHECK(subspace_sum(u, w) == subspace_sum(w, u));
    CHECK(u.annihilator().annihilator() == u);
    // coordinates reproduce members
    for (const auto& v : u.basis_vectors()) {
      auto c = u.coordinates(v);
      QVector back(n);
      for (std::size_t k = 0; k < c.size(); ++k)
        for (std::size_t j = 0; j < n; ++j) back[j] += c[k] * u.basis()(k, j);
      CHECK(back == v);
    }
  }
}

TEST_CASE("images, preimages and restrictions") {
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 5));
    const auto m = static_cast<std::size_t>(uniform(rng, 1, 5));
    QMatrix f = random_matrix(rng, m, n, 2);
    QSubspace w = random_subspace(rng, m, static_cast<std::size_t>(uniform(rng, 0, m)));
    QSubspace pre = preimage_of(f, w);
    CHECK(w.contains(image_of(f, pre)));
    auto ki = map_kernel_image(f);
    CHECK(pre.contains(ki.kernel));
    CHECK(pre.dim() == ki.kernel.dim() + subspace_intersect(ki.image, w).dim());
  }
  QMatrix n{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}};
  QSubspace ker2 = QSubspace::span(3, null_space(power(n, 2)));
  CHECK(restrict_to(n, ker2) == QMatrix{{0, 1}, {0, 0}});
  CHECK_THROWS_AS(restrict_to(n, QSubspace::coordinate(3, {2})), Error);
}

TEST_CASE("quotients and induced maps") {
  Rng rng(3);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 5;
    QSubspace bottom = random_subspace(rng, n, 1);
    QSubspace top = subspace_sum(bottom, random_subspace(rng, n, 2));
    QuotientPresentation<Rational> q(top, bottom);
    CHECK(q.dim() == top.dim() - bottom.dim());
    for (const auto& b : bottom.basis_vectors())
      for (const auto& x : q.coordinates(b)) CHECK(x == 0);
    CHECK(q.reduction() * q.representatives().transpose() == QMatrix::identity(q.dim()));
    // composition of induced maps of scalars is the product of scalars
    QMatrix two = Rational(2) * QMatrix::identity(n);
    CHECK(induced_map(two, q, q) == Rational(2) * QMatrix::identity(q.dim()));
  }
  QuotientPresentation<Rational> q(QSubspace::full(2), QSubspace::coordinate(2, {0}));
  QMatrix swap{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(induced_map(swap, q, q), Error);
  CHECK_THROWS_AS(QuotientPresentation<Rational>(QSubspace::coordinate(2, {0}), QSubspace::full(2)), Error);
}

TEST_CASE("positive definiteness agrees with Sylvester's criterion") {
  Rng rng(13);
  for (int t = 0; t < 300; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 4));
    QMatrix b = random_matrix(rng, n, n, 2);
    QMatrix g = b.transpose() * b;
    if (uniform(rng, 0, 1)) g += random_matrix(rng, 1, 1)(0, 0) * QMatrix::identity(n);
    REQUIRE(positive_definite(g).positive_definite == sylvester_positive(g));
  }
  auto r = positive_definite(QMatrix{{1, 0}, {0, 0}});
  CHECK_FALSE(r.positive_definite);
  CHECK(r.failing_pivot == 1u);
  CHECK_FALSE(positive_definite(QMatrix{{1, 1}, {0, 1}}).symmetric);
}

TEST_CASE("matrix helpers") {
  QMatrix n{{0, 1}, {0, 0}};
  CHECK(is_nilpotent(n));
  CHECK_FALSE(is_nilpotent(QMatrix::identity(2)));
  CHECK(nilpotent_exp(n) * nilpotent_exp(Rational(-1) * n) == QMatrix::identity(2));
  CHECK(kronecker(n, QMatrix::identity(2)).shape() == "4x4");
  CHECK(commutator(n, n.transpose()) == QMatrix{{1, 0}, {0, -1}});
  CHECK_THROWS_AS(n * QMatrix(3, 1), Error);
}
