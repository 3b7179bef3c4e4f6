#pragma once

#include <random>

#include "toda/lambda_op.hpp"

namespace toda::testing {

inline Rational randomRational(std::mt19937& rng, int span = 5) {
  std::uniform_int_distribution<int> num(-span, span), den(1, span);
  return rational(num(rng), den(rng));
}

/// Sparse polynomial in s (and optionally ν) with at most `terms` terms.
inline PolyCoeff randomPoly(std::mt19937& rng, int maxSDeg, int maxNuDeg = 0, int terms = 4) {
  std::uniform_int_distribution<int> sd(0, maxSDeg), nd(0, maxNuDeg), count(0, terms);
  PolyCoeff p;
  for (int t = count(rng); t > 0; --t) p.addTerm({sd(rng), nd(rng), 0}, randomRational(rng));
  return p;
}

/// Operator with orders in [lo, hi] and the given band flags.
inline LambdaOp randomOp(std::mt19937& rng, int lo, int hi, bool above, bool below, int maxSDeg = 4) {
  LambdaOp::TermMap terms;
  std::bernoulli_distribution keep(0.7);
  for (int n = lo; n <= hi; ++n) {
    if (keep(rng)) terms[{0, n}] = randomPoly(rng, maxSDeg, 0, 3);
  }
  return LambdaOp::truncated(terms, Band{lo, hi, above, below});
}

}  // namespace toda::testing
