#include <Eigen/Core>

#include "doctest.h"
#include "support.hpp"
#include "toda/ratfunc.hpp"

using namespace toda;
using toda::testing::randomRational;

namespace {

UniPoly poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return UniPoly(v);
}

UniPoly randomUniPoly(std::mt19937& rng, int maxDeg) {
  std::uniform_int_distribution<int> d(0, maxDeg);
  std::vector<Rational> c(d(rng) + 1);
  for (auto& x : c) x = randomRational(rng, 4);
  return UniPoly(c);
}

RatFunc randomRatFunc(std::mt19937& rng) {
  UniPoly den = randomUniPoly(rng, 3);
  while (den.isZero()) den = randomUniPoly(rng, 3);
  return RatFunc(randomUniPoly(rng, 4), den);
}

}  // namespace

TEST_CASE("univariate polynomials") {
  UniPoly p = poly({-1, 0, 1});  // x^2 - 1
  UniPoly q = poly({1, 1});      // x + 1
  UniPoly quo, rem;
  divmod(p, q, quo, rem);
  CHECK(quo == poly({-1, 1}));
  CHECK(rem.isZero());
  CHECK(gcd(p * poly({2, 3}), q * poly({5, 7}) * Rational(3)) == q);
  CHECK(gcd(poly({1, 1}), poly({2, 1})).isOne());
  CHECK(derivative(p) == poly({0, 2}));
  CHECK(p.toString("x") == "x^2 - 1");
  CHECK(UniPoly().degree() == -1);
  CHECK_THROWS_AS(divmod(p, UniPoly(), quo, rem), std::domain_error);
}

TEST_CASE("rational functions reduce and print canonically") {
  RatFunc f(poly({-1, 0, 1}), poly({2, 2}));  // (x^2-1)/(2x+2) = (x-1)/2
  CHECK(f.canonical().second.isOne());
  CHECK(f.toString("x") == "1/2*x - 1/2");
  RatFunc g = RatFunc(1) / RatFunc(poly({0, 1}));
  CHECK(g.toString() == "(1)/(s0)");
  CHECK((g * RatFunc::x()) == RatFunc(1));
  CHECK((g - g).isZero());
  CHECK(derivative(g) == RatFunc(-1) / (RatFunc::x() * RatFunc::x()));
  CHECK_THROWS_AS(RatFunc(1) / RatFunc(), std::domain_error);
  CHECK_THROWS_AS(g.evaluate(0), std::domain_error);
  // A removable singularity evaluates through the reduced form.
  RatFunc h = (RatFunc::x() * RatFunc::x()) * g;
  CHECK(h.evaluate(0) == 0);
}

TEST_CASE("field operations agree with evaluation") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    RatFunc f = randomRatFunc(rng), g = randomRatFunc(rng);
    const Rational x = randomRational(rng, 9) + rational(1, 97);
    Rational fx, gx;
    try {
      fx = f.evaluate(x);
      gx = g.evaluate(x);
    } catch (const std::domain_error&) {
      continue;
    }
    CHECK((f + g).evaluate(x) == fx + gx);
    CHECK((f - g).evaluate(x) == fx - gx);
    CHECK((f * g).evaluate(x) == fx * gx);
    if (!g.isZero() && gx != 0) CHECK((f / g).evaluate(x) == fx / gx);
    // Product rule and quotient rule, each side built independently.
    CHECK(derivative(f * g) == derivative(f) * g + f * derivative(g));
    if (!g.isZero()) CHECK(derivative(f / g) == (derivative(f) * g - f * derivative(g)) / (g * g));
  }
}

TEST_CASE("derivative matches the difference quotient limit") {
  // f = 1/(x - c): f' = -1/(x - c)^2, checked against (f(x+h) - f(x))/h -> f'(x)
  // through the exact identity (f(x+h) - f(x))/h = -1/((x-c)(x+h-c)).
  const Rational c = rational(3, 2);
  RatFunc f = RatFunc(1) / (RatFunc::x() - RatFunc(c));
  for (const Rational& x : {Rational(0), rational(7, 3), Rational(-4)}) {
    CHECK(derivative(f).evaluate(x) == -1 / ((x - c) * (x - c)));
  }
}

TEST_CASE("Eigen matrices over rational functions") {
  Eigen::Matrix<RatFunc, 2, 2> m;
  m << RatFunc::x(), RatFunc(1), RatFunc(0), RatFunc::x() + RatFunc(1);
  Eigen::Matrix<RatFunc, 2, 2> sq = m * m;
  CHECK(sq(0, 1) == RatFunc::x() * RatFunc(2) + RatFunc(1));
  CHECK(sq(1, 0).isZero());
}
