#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coulomb/polynomial.hpp"
#include "coulomb/rational.hpp"

using namespace coulomb;

namespace {

const std::vector<std::string> kNames{"w", "hbar"};

Polynomial w() { return Polynomial::variable(2, 0); }
Polynomial h() { return Polynomial::variable(2, 1); }
Polynomial one() { return Polynomial::constant(2, Rational(1)); }

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(parse_rational("-3/2")) == "-3/2");
  CHECK(to_string(parse_rational("4/2")) == "2");
  CHECK(to_string(parse_rational(" 7 ")) == "7");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
  CHECK_THROWS(parse_rational("1/-2"));
  CHECK(HalfInteger::parse("5/2").half_units() == 5);
  CHECK(HalfInteger::parse("3").half_units() == 6);
  CHECK(HalfInteger::from_half_units(5).to_string() == "5/2");
  CHECK(HalfInteger::from_half_units(-4).to_string() == "-2");
  CHECK_THROWS(HalfInteger::parse("1/3"));
}

TEST_CASE("polynomial arithmetic") {
  const Polynomial p = w() + h();
  CHECK((p * p).to_string(kNames) == "w^2 + 2*w*hbar + hbar^2");
  CHECK((p - p).is_zero());
  CHECK((w() * Rational(-1, 2) + one()).to_string(kNames) == "-1/2*w + 1");
  CHECK(p.pow(3) == p * p * p);
  CHECK(Polynomial(2).to_string(kNames) == "0");
  CHECK(Polynomial(2).total_degree() == -1);
}

TEST_CASE("translate implements w -> w + lambda*hbar") {
  const Polynomial p = w() * w();
  const Rational shift[] = {Rational(2), Rational(0)};
  CHECK(p.translate(shift, 1) == (w() + h() * Rational(2)).pow(2));
}

TEST_CASE("evaluation and division") {
  const Polynomial p = w() * h() + h() * h();
  CHECK(p.evaluate(1, Rational(0)).is_zero());
  CHECK(*p.divide_by_variable(1) == w() + h());
  CHECK_FALSE((p + one()).divide_by_variable(1).has_value());
  CHECK(*Polynomial::divide_exact(p, w() + h()) == h());
  CHECK_FALSE(Polynomial::divide_exact(p, w() + one()).has_value());
}

TEST_CASE("exact division inverts multiplication on random input") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-3, 3), expo(0, 2);
  auto random_poly = [&] {
    Polynomial p(2);
    for (int t = 0; t < 3; ++t) p.add_term({expo(rng), expo(rng)}, Rational(coef(rng)));
    return p;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const Polynomial a = random_poly(), b = random_poly();
    if (b.is_zero()) continue;
    auto q = Polynomial::divide_exact(a * b, b);
    REQUIRE(q.has_value());
    REQUIRE(*q == a);
  }
}

TEST_CASE("substitution and variable removal") {
  const Polynomial p = w() * h() - w();
  const Polynomial s = p.substitute(0, h() * h());
  CHECK(s == h().pow(3) - h() * h());
  CHECK(s.remove_variable(0).variable_count() == 1);
  CHECK_THROWS(p.remove_variable(0));
}
