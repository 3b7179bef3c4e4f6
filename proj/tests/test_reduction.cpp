#include "doctest.h"
#include "support.hpp"
#include "toda/reduction.hpp"

using namespace toda;

namespace {

PolyCoeff P(const char* text) { return PolyCoeff::parse(text); }

Rational inverseFactorialSquared(int j) { return 1 / (factorial(j) * factorial(j)); }

}  // namespace

TEST_CASE("undressed core collapses to a mixed exponential product") {
  StrippedU u = assembleU(LambdaOp::identity(), LambdaOp::identity(), 1, 1, 6);
  CHECK(u.expA.coefficient(2) == PolyCoeff(rational(1, 2)));
  CHECK(u.conjExpB.coefficient(-3) == PolyCoeff::Q(3) * rational(1, 6));
  // At order 0 the truncated product is Σ_{j<=6} Q^j/(j!)^2 ...
  LambdaOp::TermMap c6 = collapseTruncated(u);
  PolyCoeff expected;
  for (int j = 0; j <= 6; ++j) expected += PolyCoeff::Q(j) * inverseFactorialSquared(j);
  CHECK(c6.at({0, 0}) == expected);
  // ... and every coefficient is an infinite sum, so a wider window moves it.
  LambdaOp::TermMap c8 = collapseTruncated(assembleU(LambdaOp::identity(), LambdaOp::identity(), 1, 1, 8));
  CHECK(c8.at({0, 0}) != c6.at({0, 0}));
  CHECK(c8.at({0, 1}) != c6.at({0, 1}));
  CHECK_THROWS_AS(u.core(), EmptyBand);
}

TEST_CASE("the intertwining of U holds link by link") {
  for (auto [a, b, k, n] : {std::tuple{1, 1, 2, 8}, {2, 3, 1, 12}, {2, 1, 2, 10}}) {
    CAPTURE(a);
    CAPTURE(b);
    StrippedU u = assembleU(buildDressingPair(a, b, k, n));
    ResidualReport r = verifyUIntertwine(u, k);
    CHECK(r.pass());
    CHECK(r.parts.size() == 4);
    for (const auto& p : r.parts) CHECK(p.band.width() >= 2 * std::max(a, b));
  }
}

TEST_CASE("U without its dressing fails") {
  DressingPair p = buildDressingPair(1, 1, 2, 8);
  ResidualReport bare = verifyUIntertwine(assembleU(LambdaOp::identity(), p.vbar, 1, 1, 8), 2);
  CHECK_FALSE(bare.pass());
  CHECK(bare.firstFailingNuOrder() == 0);
  ResidualReport zeroth = verifyUIntertwine(assembleU(dropNuComponent(p.v, 1), p.vbar, 1, 1, 8), 2);
  CHECK_FALSE(zeroth.pass());
  CHECK(zeroth.firstFailingNuOrder() == 1);
  for (const auto& e : zeroth.residual) CHECK(e.part == "V^-1");
}

TEST_CASE("narrow windows are refused") {
  StrippedU u = assembleU(buildDressingPair(2, 3, 0, 3));
  ResidualReport r = verifyUIntertwine(u, 0);
  CHECK_FALSE(r.pass());
  CHECK(r.error.find("narrower") != std::string::npos);
}

TEST_CASE("non-equivariant limit") {
  for (auto [a, b] : {std::pair{1, 1}, {2, 1}, {2, 3}}) {
    StrippedU u0 = assembleU0(a, b, 14);
    CHECK(verifyU0Commute(u0).pass());
    CHECK(verifyU0Refinement(u0).pass());
    CHECK(verifyU0Flows(u0, 3).pass());
  }
  StrippedU u0 = assembleU0(1, 1, 8);
  ResidualReport noH = verifyU0Refinement(u0, LambdaOp::identity());
  CHECK_FALSE(noH.pass());
  // Omitting V̄0 on the b side breaks the last link.
  StrippedU noVbar = assembleU(buildV0(1, 8), LambdaOp::identity(), 1, 1, 8);
  ResidualReport r = verifyU0Commute(noVbar);
  CHECK_FALSE(r.pass());
  for (const auto& e : r.residual) CHECK(e.part == "conj Vbar0^-1");
  CHECK_FALSE(verifyU0Flows(assembleU0(1, 1, 4), 5).pass());
}

TEST_CASE("flows at k = 1 are the refinement") {
  StrippedU u0 = assembleU0(2, 1, 12);
  ResidualReport f = verifyU0Flows(u0, 1), ref = verifyU0Refinement(u0);
  CHECK(f.pass());
  CHECK(f.parts.size() == ref.parts.size());
}

TEST_CASE("setting ν to zero in U gives U0") {
  StrippedU u = assembleU(buildDressingPair(2, 1, 2, 10));
  StrippedU u0 = assembleU0(2, 1, 10);
  CHECK(nuComponent(u.vInv, 0) == u0.vInv.capNu(-1));
  CHECK(nuComponent(u.conjVbarInv, 0) == u0.conjVbarInv);
  CHECK(u.expA == u0.expA);
  CHECK(u.conjExpB == u0.conjExpB);
}

TEST_CASE("constant gauge factors leave the identities intact") {
  std::mt19937 rng(21);
  DressingPair p = buildDressingPair(1, 2, 2, 10);
  LambdaOp::TermMap c{{{0, 0}, PolyCoeff(1)}}, cbar{{{0, 0}, PolyCoeff(1)}};
  for (int n = 1; n <= 4; ++n) {
    c[{0, -n}] = PolyCoeff(testing::randomRational(rng)) + P("nu") * testing::randomRational(rng);
    cbar[{0, n}] = PolyCoeff(testing::randomRational(rng));
  }
  StrippedU u = assembleU(p.v * LambdaOp::exact(c), LambdaOp::exact(cbar) * p.vbar, 1, 2, 10);
  CHECK(verifyUIntertwine(u, 2).pass());
}
