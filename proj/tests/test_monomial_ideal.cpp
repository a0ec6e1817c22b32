#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "njump/monomial_ideal.hpp"

using namespace njump;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

MonomialIdeal ideal(std::vector<LatticePoint> g) { return MonomialIdeal::from_generators(std::move(g)); }

bool is_antichain(const MonomialIdeal& i) {
  const auto& g = i.generators();
  for (std::size_t k = 1; k < g.size(); ++k)
    if (!(g[k - 1].x < g[k].x && g[k - 1].y > g[k].y)) return false;
  return !g.empty();
}

std::vector<NewtonBody> fixture_bodies() {
  return {NewtonBody::hyperbola(1, 1, 1),
          NewtonBody::hyperbola(0, 0, 1),
          NewtonBody::hyperbola(q(1, 2), q(3, 2), q(2, 3)),
          NewtonBody::polyhedral({{2, 0}, {0, 3}}),
          NewtonBody::polyhedral({{1, 2}, {3, 1}}),
          NewtonBody::polyhedral({{q(5, 2), q(1, 3)}, {q(1, 2), 4}, {1, 1}}),
          minkowski_sum(NewtonBody::hyperbola(1, 1, 1), NewtonBody::polyhedral({{1, 0}})),
          minkowski_sum(NewtonBody::hyperbola(0, 0, 4), NewtonBody::polyhedral({{0, 4}, {1, 0}}))};
}

}  // namespace

TEST_CASE("multiplier ideals of the hyperbola body") {
  const auto h = NewtonBody::hyperbola(1, 1, 1);
  CHECK(multiplier_ideal(h, q(2, 5)) == MonomialIdeal::unit());
  CHECK(multiplier_ideal(h, q(1, 2)) == ideal({{0, 1}, {1, 0}}));
  CHECK(multiplier_ideal(h, 1L) == ideal({{1, 2}, {2, 1}}));
  CHECK(multiplier_ideal(NewtonBody::polyhedral({{1, 1}}), q(1, 2)) == MonomialIdeal::unit());
  CHECK(multiplier_ideal(NewtonBody::polyhedral({{2, 0}, {0, 3}}), 1L) == ideal({{0, 1}, {1, 0}}));
  // irrational coefficient; ideals are constant on [sqrt 2, sqrt 3)
  const auto xy = NewtonBody::hyperbola(0, 0, 1);
  CHECK(multiplier_ideal(xy, ExactReal::sqrt(2)) == multiplier_ideal(xy, q(14143, 10000)));
  CHECK(multiplier_ideal(xy, ExactReal::sqrt(2)) != multiplier_ideal(xy, q(14142, 10000)));
}

TEST_CASE("far asymptotes are scanned by galloping") {
  // x0 = 1 - 10^-9 forces a huge first column and a long flat tail
  const Rational eps = q(1, 1000000000);
  const auto b = NewtonBody::hyperbola(1 - eps, 1 - eps, eps);
  const auto i = lattice_staircase(b, true);
  CHECK(is_antichain(i));
  CHECK(i.generators().back().y == 1);
}

TEST_CASE("staircase agrees with brute-force interior test") {
  for (const auto& body : fixture_bodies()) {
    for (const Rational& c : {q(1, 3), q(1, 2), q(5, 6), q(1), q(3, 2), q(7, 3)}) {
      const auto i = multiplier_ideal(body, c);
      CHECK(is_antichain(i));
      const auto scaled = scale(body, c);
      for (long a = 0; a < 20; ++a)
        for (long b = 0; b < 20; ++b) {
          const bool inside = scaled.contains(ExactReal(a + 1), ExactReal(b + 1), true);
          CHECK(i.contains({a, b}) == inside);
        }
    }
  }
}

TEST_CASE("closed staircase agrees with brute-force closed test") {
  for (const auto& body : fixture_bodies()) {
    const auto i = lattice_staircase(scale(body, 2L), false);
    CHECK(is_antichain(i));
    const auto scaled = scale(body, 2L);
    for (long a = 0; a < 20; ++a)
      for (long b = 0; b < 20; ++b) CHECK(i.contains({a, b}) == scaled.contains(ExactReal(a), ExactReal(b), false));
  }
}

TEST_CASE("monotone in c and consistent with scaling") {
  for (const auto& body : fixture_bodies()) {
    const std::vector<Rational> cs{q(1, 4), q(1, 2), q(2, 3), q(1), q(4, 3), q(2)};
    for (std::size_t k = 1; k < cs.size(); ++k)
      CHECK(ideal_contains_ideal(multiplier_ideal(body, cs[k - 1]), multiplier_ideal(body, cs[k])));
    for (const auto& c : cs) CHECK(multiplier_ideal(body, c) == multiplier_ideal(scale(body, c), 1L));
  }
}

TEST_CASE("subadditivity at the lct") {
  for (const auto& body : fixture_bodies()) {
    const ExactReal lct = gauge(body, {1, 1});
    const auto j_lct = multiplier_ideal(body, lct);
    for (const Rational& chi : {q(1, 3), q(1), q(5, 2)}) {
      const auto lhs = ideal_product(multiplier_ideal(body, chi), j_lct);
      CHECK(ideal_contains_ideal(lhs, multiplier_ideal(body, ExactReal(chi) + lct)));
    }
  }
}

TEST_CASE("ideal algebra") {
  const auto m = ideal({{0, 1}, {1, 0}});
  const auto deep = ideal({{1, 2}, {2, 1}});
  CHECK(ideal_contains_ideal(m, deep));
  CHECK_FALSE(ideal_contains_ideal(deep, m));
  CHECK(ideal_contains_ideal(deep, deep));
  CHECK(ideal_product(ideal({{1, 0}}), ideal({{0, 1}})) == ideal({{1, 1}}));
  CHECK(ideal_product(m, m) == ideal({{0, 2}, {1, 1}, {2, 0}}));
  CHECK(ideal_product(deep, MonomialIdeal::unit()) == deep);
  CHECK(ideal({{2, 2}, {1, 3}, {3, 1}, {2, 5}, {1, 3}}) == ideal({{1, 3}, {2, 2}, {3, 1}}));
  CHECK_THROWS_AS(MonomialIdeal::from_generators({}), std::invalid_argument);

  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::int64_t> coord(0, 9);
  for (int t = 0; t < 200; ++t) {
    std::vector<LatticePoint> a, b;
    for (int k = 0; k < 4; ++k) a.push_back({coord(rng), coord(rng)});
    for (int k = 0; k < 3; ++k) b.push_back({coord(rng), coord(rng)});
    const auto i = ideal(a);
    const auto j = ideal(b);
    const auto p = ideal_product(i, j);
    CHECK(is_antichain(p));
    CHECK(ideal_contains_ideal(i, p));
    CHECK(ideal_contains_ideal(j, p));
    // brute-force membership of the product
    for (std::int64_t x = 0; x < 20; ++x)
      for (std::int64_t y = 0; y < 20; ++y) {
        bool expected = false;
        for (const auto& g : a)
          for (const auto& h : b) expected = expected || (g.x + h.x <= x && g.y + h.y <= y);
        CHECK(p.contains({x, y}) == expected);
      }
  }
}

TEST_CASE("newton polyhedron") {
  const auto quadrant = newton_polyhedron(MonomialIdeal::unit());
  CHECK(quadrant.is_quadrant());
  CHECK(asymptotes(quadrant) == Asymptotes{0L, 0L, true, true});
  CHECK(equal_bodies(newton_polyhedron(ideal({{1, 2}, {2, 1}})), NewtonBody::polyhedral({{1, 2}, {2, 1}})));
  CHECK(equal_bodies(newton_polyhedron(ideal({{2, 0}, {0, 3}})), NewtonBody::diagonal(2, 3)));
}

TEST_CASE("printing") {
  CHECK(monomial_string({0, 0}) == "1");
  CHECK(monomial_string({1, 0}) == "x");
  CHECK(monomial_string({0, 3}) == "y^3");
  CHECK(monomial_string({2, 1}) == "x^2*y");
  CHECK(to_string(ideal({{3, 0}, {2, 1}, {0, 2}})) == "y^2, x^2*y, x^3");
  CHECK(to_csv(ideal({{0, 1}, {1, 0}})) == "a,b\n0,1\n1,0\n");
}
