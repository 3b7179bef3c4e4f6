#include "doctest.h"
#include "support.hpp"
#include "toda/dressing.hpp"
#include "toda/intertwiner.hpp"

using namespace toda;

namespace {

PolyCoeff P(const char* text) { return PolyCoeff::parse(text); }

// 1/(1+m)_k by walking down from r_0 = 1 with r_k = (m+k+1)·r_{k+1}.
Rational pochhammerByRecurrence(int m, int k) {
  Rational r = 1;
  if (k >= 0) {
    for (int j = 1; j <= k; ++j) r /= (m + j);
    return r;
  }
  for (int j = -1; j >= k; --j) r *= (m + j + 1);
  return r;
}

}  // namespace

TEST_CASE("exponential coefficients") {
  CHECK(ExpCoeff::beta(1, 0) * ExpCoeff::beta(-1, 0) == ExpCoeff(1));
  CHECK(shiftCoeff(ExpCoeff::beta(rational(3, 2), 0), 1) == ExpCoeff::beta(rational(3, 2), rational(3, 2)));
  CHECK(ExpCoeff::term(P("s"), rational(1, 2), 0) * ExpCoeff::beta(rational(1, 2), 0) == ExpCoeff::term(P("s"), 1, 0));
  CHECK((ExpCoeff::beta(1, 2) - ExpCoeff::beta(1, 2)).isZero());
  CHECK(shiftCoeff(ExpCoeff::term(P("s^2"), 2, 1), -1) == ExpCoeff::term(P("s^2 - 2*s + 1"), 2, -1));
  CHECK_THROWS_AS(derivCoeff(ExpCoeff::beta(1, 0)), DerivUnsupported);
  CHECK_THROWS_AS(ExpLambdaOp::logLambda() * ExpLambdaOp::diagonal(ExpCoeff::beta(1, 0)), DerivUnsupported);
  CHECK(invertUnitCoeff(ExpCoeff::term(PolyCoeff(2), 0, 3)) == ExpCoeff::term(PolyCoeff(rational(1, 2)), 0, -3));
  CHECK_THROWS_AS(invertUnitCoeff(ExpCoeff::beta(1, 0)), NotUnitriangular);
}

TEST_CASE("E operators") {
  CHECK(buildE(1, 5).coefficient(1) == ExpCoeff::beta(5, 0));
  CHECK(buildE(0, rational(2, 3)).coefficient(0) == ExpCoeff::beta(rational(2, 3), rational(-1, 3)));
  // 𝓔_a 𝓔_b = β^{(z·a)...}: shifting past Λ^k multiplies by β^{zk}.
  ExpLambdaOp prod = buildE(1, 2) * buildE(-1, 2);
  CHECK(prod.coefficient(0) == ExpCoeff::beta(4, 0));
}

TEST_CASE("reciprocal Pochhammer symbols") {
  CHECK(1 / reciprocalPochhammer(2, 1) == 3);
  CHECK(1 / reciprocalPochhammer(2, -1) == rational(1, 2));
  for (int m = 0; m <= 5; ++m) {
    CHECK(reciprocalPochhammer(m, -m - 1) == 0);
    for (int k = -m - 3; k <= 6; ++k) CHECK(reciprocalPochhammer(m, k) == pochhammerByRecurrence(m, k));
  }
  ExpLambdaOp t = buildATilde(1, rational(1, 2), 4);
  CHECK(t.coefficient(-1) == ExpCoeff(2));  // w^{-1}/(2)_{-1} with w = 1/2
  CHECK(t.band().low == -1);
}

TEST_CASE("structure of the intertwiner coefficients") {
  for (int m = 1; m <= 2; ++m) {
    const Rational u = rational(1, 3), w = m * u;
    ExpLambdaOp tilde = buildATilde(m, u, 6);
    for (const auto& [k, c] : tilde.terms()) CHECK(c.isSFreeExponent());
    ExpLambdaOp a = buildA(m, u, 6);
    for (const auto& [k, c] : a.terms()) {
      for (const auto& [e, p] : c.terms()) {
        CHECK(e.first == w);
        Rational ratio = (e.second + w / 2) / (w / 2);
        CHECK(ratio.get_den() == 1);
        CHECK(p.isConstant());
      }
    }
  }
}

TEST_CASE("BCH-factored intertwining") {
  CHECK(verifyBCH(1, rational(1, 2), 8).pass());
  CHECK(verifyBCH(2, rational(1, 3), 10).pass());
  ResidualReport bare = verifyBCH(1, rational(1, 2), 8, LambdaOp::identity().clip(-8, 0));
  CHECK_FALSE(bare.pass());
}

TEST_CASE("A V = V Atilde") {
  for (int m = 1; m <= 2; ++m) {
    for (const Rational& u : {rational(1, 2), rational(1, 3), rational(2, 5)}) {
      ResidualReport r = verifyAV(m, u, 8);
      CHECK(r.pass());
      CHECK(r.pass() == verifyBCH(m, u, 8).pass());
    }
  }
  const Rational u = rational(1, 2);
  ResidualReport wrong = verifyAV(1, u, 8, dressingAt(u, 8), buildA(1, u, 8, AWeight::PlainW));
  CHECK_FALSE(wrong.pass());
  ResidualReport undressed = verifyAV(2, u, 8, LambdaOp::identity().clip(-8, 0), buildA(2, u, 8));
  CHECK_FALSE(undressed.pass());
}

TEST_CASE("specialising ν commutes with the relation check") {
  for (const Rational& u : {rational(1, 2), rational(2, 5), Rational(3)}) {
    LambdaOp v = buildV(1, 8, 8);
    CHECK(v.nuCap() == -1);
    LambdaOp vu = substituteNu(v, 1 / u);
    LambdaOp left = LambdaOp::shift(1) + LambdaOp::diagonal(PolyCoeff::H()) - LambdaOp::logLambda() * (1 / u);
    LambdaOp right = LambdaOp::shift(1) - LambdaOp::logLambda() * (1 / u);
    LambdaOp res = left * vu - vu * right;
    CHECK(res.isZero());
    CHECK(res.band() == Band{-7, 1, true, false});
  }
}
