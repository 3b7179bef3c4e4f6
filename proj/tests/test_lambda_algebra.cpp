#include "doctest.h"
#include "support.hpp"

using namespace toda;

namespace {

PolyCoeff P(const char* text) { return PolyCoeff::parse(text); }

LambdaOp term(const char* f, int n, int logDeg = 0) { return LambdaOp::monomial(P(f), n, logDeg); }

bool agreeOnCommonBand(const LambdaOp& x, const LambdaOp& y) {
  const int lo = std::max(x.band().low, y.band().low);
  const int hi = std::min(x.band().high, y.band().high);
  for (int d = 0; d <= std::max(x.logDegree(), y.logDegree()); ++d) {
    for (int n = lo; n <= hi; ++n) {
      if (x.coefficient(n, d) != y.coefficient(n, d)) return false;
    }
  }
  return true;
}

LambdaOp randomShaped(std::mt19937& rng, int shape) {
  switch (shape) {
    case 0: return testing::randomOp(rng, -2, 2, true, true);
    case 1: return testing::randomOp(rng, -8, 1, true, false);
    default: return testing::randomOp(rng, -1, 8, false, true);
  }
}

// Applies A to a function on the integer lattice: (fΛ^n φ)(s) = f(s) φ(s+n).
template <class Phi>
Rational applyAt(const LambdaOp& a, Phi phi, long s, const Rational& q) {
  Rational acc(0);
  for (const auto& [k, f] : a.terms()) acc += evaluate(f, s, 0, q) * phi(s + k.second);
  return acc;
}

}  // namespace

TEST_CASE("composition follows the shift rule") {
  CHECK(LambdaOp::shift(1) * LambdaOp::diagonal(P("s")) == term("s + 1", 1));
  CHECK(LambdaOp::logLambda() * LambdaOp::diagonal(P("s^2")) == term("s^2", 0, 1) + term("2*s", 0));
  LambdaOp x = LambdaOp::identity() + term("s", -1);
  LambdaOp y = LambdaOp::identity() - term("s", -1) + term("s^2 - s", -2);
  LambdaOp xy = x * y;
  CHECK(xy.coefficient(0) == PolyCoeff(1));
  CHECK(xy.coefficient(-1).isZero());
  CHECK(xy.coefficient(-2).isZero());
  CHECK(xy.coefficient(-3) == P("s^3 - 3*s^2 + 2*s"));
}

TEST_CASE("commutators") {
  CHECK(commutator(LambdaOp::logLambda(), term("s^3 - s", 2)) == term("3*s^2 - 1", 2));
  for (int a = 1; a <= 3; ++a) {
    LambdaOp c = commutator(LambdaOp::shift(a), term("s^2 + 1", -2));
    CHECK(c == LambdaOp::monomial(polyShift(P("s^2 + 1"), a) - P("s^2 + 1"), a - 2));
  }
  CHECK(commutator(LambdaOp::shift(1), LambdaOp::shift(2)).isExactZero());
}

TEST_CASE("adjoint reverses orders") {
  CHECK(adjoint(term("s", -1)) == term("s + 1", 1));
  CHECK(adjoint(LambdaOp::shift(3)) == LambdaOp::shift(-3));
  CHECK(adjoint(LambdaOp::logLambda()) == -LambdaOp::logLambda());
  // (f Λ^n logΛ)* = -logΛ f(s-n) Λ^{-n}
  LambdaOp a = term("s^2", 2, 1);
  CHECK(adjoint(a) == -(LambdaOp::logLambda() * term("s^2 - 4*s + 4", -2)));
  LambdaOp trunc = testing::randomOp(*new std::mt19937(3), -5, 0, true, false);
  CHECK(adjoint(trunc).band() == Band{0, 5, false, true});
}

TEST_CASE("projections") {
  LambdaOp l = term("1", 1) + term("s", 0) + term("s^2", -1);
  CHECK(project(l, Part::NonNegative) == term("1", 1) + term("s", 0));
  CHECK(project(term("1", 1) + term("s^2", -1), Part::Negative) == term("s^2", -1));
  CHECK(project(LambdaOp(), Part::NonNegative).isExactZero());
  LambdaOp lower = testing::randomOp(*new std::mt19937(5), -6, 2, true, false);
  LambdaOp neg = project(lower, Part::Negative);
  CHECK(neg.band() == Band{-6, -1, true, false});
  CHECK(project(lower, Part::NonNegative).band().exact());
}

TEST_CASE("exponential of one-signed operators") {
  LambdaOp e = opExp(term("1/2", 2), 4);
  CHECK(e == LambdaOp::truncated({{{0, 0}, 1}, {{0, 2}, rational(1, 2)}, {{0, 4}, rational(1, 8)}},
                                 Band{0, 4, false, true}));
  CHECK(opExp(LambdaOp(), 5) == LambdaOp::identity());
  LambdaOp em = opExp(LambdaOp::shift(-1), 2);
  CHECK(em.coefficient(-1) == PolyCoeff(1));
  CHECK(em.coefficient(-2) == PolyCoeff(rational(1, 2)));
  CHECK(em.band() == Band{-2, 0, true, false});
  CHECK_THROWS_AS(opExp(term("1", 1) + term("1", -1), 3), MixedSign);
  CHECK_THROWS_AS(opExp(term("1", 0), 3), MixedSign);
}

TEST_CASE("inverse by Neumann series") {
  LambdaOp inv = opInvert(LambdaOp::identity() + term("s", -1), 2);
  CHECK(inv.coefficient(-1) == P("-s"));
  CHECK(inv.coefficient(-2) == P("s^2 - s"));
  CHECK(inv.band() == Band{-2, 0, true, false});
  CHECK(opInvert(LambdaOp::identity(), 4) == LambdaOp::identity());
  LambdaOp up = opInvert(LambdaOp::identity() + LambdaOp::shift(1), 2);
  CHECK(up.coefficient(1) == PolyCoeff(-1));
  CHECK(up.coefficient(2) == PolyCoeff(1));
  LambdaOp scaled = opInvert(term("2*Q", 0) + term("s", -1), 3);
  LambdaOp back = (term("2*Q", 0) + term("s", -1)) * scaled;
  CHECK(back.band() == Band{-3, 0, true, false});
  CHECK(back.coefficient(0) == PolyCoeff(1));
  CHECK(back.terms().size() == 1);
  CHECK_THROWS_AS(opInvert(term("s", 0), 2), NotUnitriangular);
  CHECK_THROWS_AS(opInvert(term("1", 1) + term("1", -1) + LambdaOp::identity(), 2), NotUnitriangular);
}

TEST_CASE("inverse multiplies back to one on its band") {
  std::mt19937 rng(19);
  for (int t = 0; t < 50; ++t) {
    LambdaOp n = testing::randomOp(rng, -6, -1, true, false, 3);
    LambdaOp a = LambdaOp::identity() + n;
    LambdaOp inv = opInvert(a, 6);
    LambdaOp prod = a * inv;
    for (int k = prod.band().low; k <= prod.band().high; ++k) {
      REQUIRE(prod.coefficient(k) == PolyCoeff(k == 0 ? 1 : 0));
    }
    CHECK(prod.band().low == -6);
  }
}

TEST_CASE("conjugation by Q^H on a lattice") {
  CHECK(conjQH(LambdaOp::shift(-2)) == term("Q^2", -2));
  CHECK(conjQH(LambdaOp::diagonal(P("s^2 + nu"))) == LambdaOp::diagonal(P("s^2 + nu")));
  CHECK(conjQH(LambdaOp::shift(1)) == term("Q^-1", 1));

  // With Q = r^2 and integer s, Q^{s-1/2} = r^{2s-1} is rational, so Q^H acts
  // exactly on lattice functions. Compare Q^H A Q^{-H} φ with conjQH(A) φ.
  std::mt19937 rng(41);
  const Rational roots[] = {2, 3, rational(1, 2), rational(2, 3), 5};
  for (const Rational& r : roots) {
    const Rational q = r * r;
    auto qh = [&](long s) -> Rational { return power(r, static_cast<int>(2 * s - 1)); };
    auto phi = [](long s) -> Rational { return s >= -3 && s <= 3 ? Rational(s * s + 1) : Rational(0); };
    LambdaOp a = testing::randomOp(rng, -3, 3, true, true) * PolyCoeff::Q(0).constantTerm();
    for (long s = -4; s <= 4; ++s) {
      auto scaled = [&](long t) -> Rational { return phi(t) / qh(t); };
      Rational direct = qh(s) * applyAt(a, scaled, s, q);
      CHECK(direct == applyAt(conjQH(a), phi, s, q));
    }
  }
}

TEST_CASE("band calculus examples") {
  Band lower{-8, 0, true, false}, upper{0, 8, false, true}, exact{-2, 2, true, true};
  CHECK(productBand(lower, lower) == Band{-8, 0, true, false});
  CHECK(productBand(upper, upper) == Band{0, 8, false, true});
  CHECK(productBand(lower, exact) == Band{-6, 2, true, false});
  CHECK_THROWS_AS(productBand(lower, upper), EmptyBand);
  CHECK(sumBand(lower, exact) == Band{-8, 2, true, false});
  CHECK(sumBand(Band{-8, -5, true, false}, Band{0, 8, false, true}) == Band{-8, 8, false, false});
  CHECK_THROWS_AS(sumBand(Band{-8, -5, false, false}, Band{0, 8, false, false}), EmptyBand);
}

TEST_CASE("products are associative on the common band") {
  std::mt19937 rng(101);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    LambdaOp a = randomShaped(rng, t % 3), b = randomShaped(rng, (t / 3) % 3), c = randomShaped(rng, (t / 9) % 3);
    LambdaOp left, right;
    try {
      left = (a * b) * c;
      right = a * (b * c);
    } catch (const EmptyBand&) {
      continue;
    }
    ++checked;
    REQUIRE(agreeOnCommonBand(left, right));
  }
  CHECK(checked > 60);
}

TEST_CASE("trusted coefficients do not move when the window widens") {
  // Each truncated operator is cut from a finite 'true' one; the trusted part
  // of a product must match the exact product of the true operators.
  std::mt19937 rng(55);
  for (int t = 0; t < 200; ++t) {
    const int sa = t % 3, sb = (t / 3) % 3;
    auto make = [&](int shape) {
      return shape == 0 ? testing::randomOp(rng, -2, 2, true, true, 3)
             : shape == 1 ? testing::randomOp(rng, -12, 1, true, true, 3)
                          : testing::randomOp(rng, -1, 12, true, true, 3);
    };
    auto cut = [](const LambdaOp& x, int shape, int w) {
      return shape == 0 ? x : shape == 1 ? x.clip(-w, 1) : x.clip(-1, w);
    };
    LambdaOp ta = make(sa), tb = make(sb);
    LambdaOp truth = ta * tb;
    LambdaOp narrow, wide;
    try {
      narrow = cut(ta, sa, 4) * cut(tb, sb, 4);
      wide = cut(ta, sa, 8) * cut(tb, sb, 8);
    } catch (const EmptyBand&) {
      continue;
    }
    REQUIRE(agreeOnCommonBand(narrow, wide));
    REQUIRE(agreeOnCommonBand(narrow, truth));
    REQUIRE(agreeOnCommonBand(wide, truth));
  }
}

TEST_CASE("adjoint is an involutive antihomomorphism") {
  std::mt19937 rng(77);
  for (int t = 0; t < 100; ++t) {
    LambdaOp a = randomShaped(rng, t % 3), b = randomShaped(rng, (t + 1) % 3);
    if (t % 4 == 0) a = a + LambdaOp::logLambda() * testing::randomOp(rng, -1, 1, true, true);
    CHECK(adjoint(adjoint(a)) == a);
    LambdaOp ab;
    try {
      ab = a * b;
    } catch (const EmptyBand&) {
      continue;
    }
    CHECK(agreeOnCommonBand(adjoint(ab), adjoint(b) * adjoint(a)));
  }
}

TEST_CASE("projections partition an operator") {
  std::mt19937 rng(8);
  for (int t = 0; t < 50; ++t) {
    LambdaOp a = testing::randomOp(rng, -5, 5, t % 2 == 0, t % 3 == 0);
    CHECK(agreeOnCommonBand(project(a, Part::NonNegative) + project(a, Part::Negative), a));
  }
}

TEST_CASE("conjQH is multiplicative") {
  std::mt19937 rng(9);
  for (int t = 0; t < 100; ++t) {
    LambdaOp a = randomShaped(rng, t % 3), b = randomShaped(rng, (t / 3) % 3);
    LambdaOp ab;
    try {
      ab = a * b;
    } catch (const EmptyBand&) {
      continue;
    }
    CHECK(conjQH(ab) == conjQH(a) * conjQH(b));
    CHECK(unconjQH(conjQH(a)) == a);
  }
}

TEST_CASE("commutator with logΛ differentiates coefficients") {
  std::mt19937 rng(12);
  for (int t = 0; t < 100; ++t) {
    LambdaOp a = randomShaped(rng, t % 3);
    LambdaOp c = commutator(LambdaOp::logLambda(), a);
    CHECK(c.logDegree() == 0);
    CHECK(agreeOnCommonBand(c, sDerivative(a)));
  }
}

TEST_CASE("operator records round trip") {
  std::mt19937 rng(31);
  for (int t = 0; t < 50; ++t) {
    LambdaOp a = conjQH(randomShaped(rng, t % 3)) + LambdaOp::logLambda() * term("nu", -1);
    CHECK(lambdaOpFromJson(toJson(a)) == a);
    CHECK(lambdaOpFromJson(nlohmann::json::parse(toJson(a).dump())) == a);
  }
  CHECK_THROWS_AS(lambdaOpFromJson(nlohmann::json::parse(R"({"terms": {}})")), ParseError);
}

TEST_CASE("ν caps propagate through products") {
  LambdaOp a = LambdaOp::exact({{{0, 0}, P("1 + nu + nu^2")}}, 1);
  CHECK(a.coefficient(0) == P("1 + nu"));
  LambdaOp b = LambdaOp::diagonal(P("nu"));
  CHECK((a * b).coefficient(0) == P("nu"));
  CHECK((a * b).nuCap() == 1);
}
