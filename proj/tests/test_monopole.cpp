#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "coulomb/errors.hpp"
#include "coulomb/monopole.hpp"
#include "oracles.hpp"
#include "random_theories.hpp"

using namespace coulomb;

namespace {

HalfInteger half(std::int64_t h) { return HalfInteger::from_half_units(h); }

NonabelianTheory u1_flavors(std::size_t n) {
  TorusTheory t;
  t.rank = 1;
  t.matter.assign(n, Covector{1});
  return NonabelianTheory::from_torus(t);
}

NonabelianTheory gl(std::size_t n, std::size_t flavors) {
  QuiverData q;
  q.vertices = 1;
  q.v = {static_cast<std::int64_t>(n)};
  q.w = {static_cast<std::int64_t>(flavors)};
  return quiver_to_theory(q);
}

std::vector<mpq_class> oracle_coefficients(const oracle::HalfSeries& s) { return s.c; }

// Orbit representatives by brute force: sort each GL block of every point
// in a box, collect distinct results.
std::set<Coweight> orbit_scan(const NonabelianTheory& t, int box) {
  std::set<Coweight> reps;
  const std::size_t n = t.rank();
  Coweight l(n, -box);
  for (;;) {
    Coweight r = l;
    for (std::size_t f = 0; f < t.factors.size(); ++f)
      if (t.factors[f].kind == GaugeFactor::Kind::gl) {
        auto b = r.begin() + static_cast<std::ptrdiff_t>(t.offset(f));
        std::sort(b, b + static_cast<std::ptrdiff_t>(t.factors[f].rank), std::greater<>());
      }
    reps.insert(r);
    std::size_t j = n;
    while (j > 0 && l[j - 1] == box) l[--j] = -box;
    if (j == 0) break;
    ++l[j - 1];
  }
  return reps;
}

}  // namespace

TEST_CASE("quiver to theory") {
  const NonabelianTheory a = gl(1, 2);
  CHECK(a.rank() == 1);
  CHECK(a.matter == std::vector<Covector>{{1}, {1}});

  QuiverData loop;
  loop.vertices = 1;
  loop.v = {1};
  loop.w = {0};
  loop.edges = {{0, 0}};
  CHECK(quiver_to_theory(loop).matter == std::vector<Covector>{{0}});

  QuiverData edge;
  edge.vertices = 2;
  edge.v = {1, 1};
  edge.w = {0, 0};
  edge.edges = {{0, 1}};
  CHECK(quiver_to_theory(edge).matter == std::vector<Covector>{{-1, 1}});

  edge.edges = {{0, 2}};
  CHECK_THROWS_AS(quiver_to_theory(edge), DimensionError);
}

TEST_CASE("monopole delta examples") {
  const NonabelianTheory a = u1_flavors(2);
  for (std::int64_t m = -4; m <= 4; ++m) CHECK(monopole_delta(a, {m}) == HalfInteger::from_integer(std::abs(m)));
  CHECK(monopole_delta(a, {0}) == half(0));
  CHECK(monopole_delta(gl(2, 0), {1, 0}) == HalfInteger::from_integer(-1));
}

TEST_CASE("dressing factors") {
  const auto order = half(8);
  const auto geo = oracle::one_minus(8, 2).inverse();
  CHECK(dressing_factor(u1_flavors(1), {3}, order).coefficients() == oracle_coefficients(geo));
  const NonabelianTheory g2 = gl(2, 4);
  const auto full = geo * oracle::one_minus(8, 4).inverse();
  CHECK(dressing_factor(g2, {1, 1}, order).coefficients() == oracle_coefficients(full));
  CHECK(dressing_factor(g2, {2, -1}, order).coefficients() == oracle_coefficients(geo.pow(2)));
}

TEST_CASE("U(1) with two flavors: (1+q)/(1-q)^2") {
  const auto s = monopole_hilbert_series(u1_flavors(2), HalfInteger::from_integer(10));
  const auto c = s.coefficients();
  for (std::size_t k = 0; k <= 10; ++k) {
    CHECK(c[2 * k] == Rational(static_cast<long>(2 * k + 1)));
    if (k < 10) CHECK(c[2 * k + 1] == 0);
  }
}

TEST_CASE("U(1) with one flavor: C^2") {
  const auto order = HalfInteger::from_integer(10);
  const auto expected = oracle::one_minus(20, 1).inverse().pow(2);
  CHECK(monopole_hilbert_series(u1_flavors(1), order).coefficients() == oracle_coefficients(expected));
  CHECK(algebra_hilbert_series(TorusTheory{1, {{1}}, {}, 0}, order).coefficients() == oracle_coefficients(expected));
}

TEST_CASE("divergence without matter") {
  try {
    monopole_hilbert_series(u1_flavors(0), half(4));
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.witness().size() == 1);
  }
  CHECK_THROWS_AS(monopole_hilbert_series(gl(2, 1), half(4)), DivergenceError);  // bad theory
}

TEST_CASE("order 0 gives the constant series") {
  TorusTheory t{1, {{1}, {1}}, {}, 0};
  CHECK(algebra_hilbert_series(t, half(0)).coefficients() == std::vector<Rational>{1});
  CHECK(monopole_hilbert_series(NonabelianTheory::from_torus(t), half(0)).coefficients() == std::vector<Rational>{1});
}

TEST_CASE("T[SU(3)]: nilpotent cone of sl(3)") {
  QuiverData q;
  q.vertices = 2;
  q.v = {1, 2};
  q.w = {0, 3};
  q.edges = {{0, 1}};
  const std::size_t n = 12;
  const auto expected = oracle::one_minus(n, 2).inverse().pow(8) * oracle::one_minus(n, 4) * oracle::one_minus(n, 6);
  CHECK(monopole_hilbert_series(quiver_to_theory(q), half(n)).coefficients() == oracle_coefficients(expected));
}

TEST_CASE("U(2) with four flavors") {
  // The monopole formula written out by hand for this one case.
  const NonabelianTheory t = gl(2, 4);
  const std::size_t n = 10;
  oracle::HalfSeries expected(n);
  for (int a = -6; a <= 6; ++a)
    for (int b = -6; b <= a; ++b) {
      const int twice_delta = 4 * (std::abs(a) + std::abs(b)) - 2 * std::abs(a - b);
      if (twice_delta > static_cast<int>(n)) continue;
      oracle::HalfSeries term = oracle::HalfSeries::polynomial(n, {{twice_delta, 1}});
      term = term * oracle::one_minus(n, 2).inverse();
      term = term * (a == b ? oracle::one_minus(n, 4).inverse() : oracle::one_minus(n, 2).inverse());
      for (std::size_t k = 0; k <= n; ++k) expected.c[k] += term.c[k];
    }
  CHECK(monopole_hilbert_series(t, half(n)).coefficients() == oracle_coefficients(expected));
}

TEST_CASE("Weyl symmetry of Delta") {
  const NonabelianTheory t = gl(2, 3);
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b) CHECK(monopole_delta(t, {a, b}) == monopole_delta(t, {b, a}));
  QuiverData q;
  q.vertices = 2;
  q.v = {3, 1};
  q.w = {1, 2};
  q.edges = {{0, 1}};
  const NonabelianTheory u = quiver_to_theory(q);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    Coweight l = fixtures::random_coweight(rng, 4, 4);
    Coweight p = l;
    std::shuffle(p.begin(), p.begin() + 3, rng);
    CHECK(monopole_delta(u, l) == monopole_delta(u, p));
  }
}

TEST_CASE("dominant enumeration hits each orbit once") {
  QuiverData q;
  q.vertices = 2;
  q.v = {2, 1};
  q.w = {4, 3};
  q.edges = {{0, 1}};
  const NonabelianTheory t = quiver_to_theory(q);
  const HalfInteger order = half(8);
  const auto dom = dominant_coweights_up_to(t, order);
  CHECK(std::set<Coweight>(dom.begin(), dom.end()).size() == dom.size());
  std::set<Coweight> expected;
  for (const auto& r : orbit_scan(t, 9))
    if (monopole_delta(t, r) <= order) expected.insert(r);
  // Nothing with Delta <= order lies near the edge of the box.
  for (const auto& r : expected) CHECK(std::all_of(r.begin(), r.end(), [](auto x) { return std::abs(x) < 9; }));
  CHECK(std::set<Coweight>(dom.begin(), dom.end()) == expected);
}

TEST_CASE("fugacity refinement collapses to the plain series") {
  QuiverData q;
  q.vertices = 2;
  q.v = {1, 2};
  q.w = {0, 3};
  q.edges = {{0, 1}};
  const NonabelianTheory t = quiver_to_theory(q);
  const auto refined = monopole_hilbert_series(t, half(8), true);
  CHECK(refined.fugacity_count() == 2);
  CHECK(refined.collapse_fugacities() == monopole_hilbert_series(t, half(8)));
  for (const auto& [key, c] : refined.terms()) {
    CHECK(c > 0);
    CHECK(c.get_den() == 1);
  }
  const auto u1 = monopole_hilbert_series(u1_flavors(2), half(4), true);
  CHECK(u1.coefficient(2, {1}) == 1);
  CHECK(u1.coefficient(2, {0}) == 1);
  CHECK(u1.coefficient(2, {-1}) == 1);
}

TEST_CASE("cross-oracle: monopole sum equals basis count on random torus theories") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const TorusTheory t = fixtures::random_positive_theory(rng, 3, 5);
    const HalfInteger order = half(8);
    CHECK(monopole_hilbert_series(NonabelianTheory::from_torus(t), order) == algebra_hilbert_series(t, order));
  }
}
