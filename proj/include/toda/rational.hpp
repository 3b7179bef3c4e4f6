#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace toda {

/// Exact rational number; GMP keeps it canonical (gcd 1, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses `p`, `-p` or `p/q` exactly. Throws std::invalid_argument.
Rational parseRational(std::string_view text);

/// `p` when the denominator is 1, otherwise `p/q`.
std::string toString(const Rational& r);

inline Rational rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

/// r^e for integer e (r must be nonzero when e < 0).
Rational power(const Rational& r, int e);

}  // namespace toda
