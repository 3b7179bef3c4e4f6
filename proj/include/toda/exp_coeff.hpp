#pragma once

#include <map>
#include <string>
#include <utility>

#include "toda/lambda_op.hpp"
#include "toda/poly_coeff.hpp"

namespace toda {

/// Finite sum Σ p(s)·β^{γs+δ}, β a formal stand-in for e. Terms with equal
/// (γ, δ) are merged; γ = δ = 0 is the embedded polynomial ring.
class ExpCoeff {
 public:
  using Exponent = std::pair<Rational, Rational>;  // (γ, δ)
  using TermMap = std::map<Exponent, PolyCoeff>;

  ExpCoeff() = default;
  ExpCoeff(const PolyCoeff& p);  // NOLINT(google-explicit-constructor)
  ExpCoeff(const Rational& c) : ExpCoeff(PolyCoeff(c)) {}  // NOLINT
  ExpCoeff(long c) : ExpCoeff(PolyCoeff(c)) {}             // NOLINT
  ExpCoeff(int c) : ExpCoeff(PolyCoeff(c)) {}              // NOLINT

  /// p(s)·β^{γs+δ}.
  static ExpCoeff term(const PolyCoeff& p, const Rational& gamma, const Rational& delta);
  /// β^{γs+δ}.
  static ExpCoeff beta(const Rational& gamma, const Rational& delta) { return term(1, gamma, delta); }

  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  /// True when no term carries a β-power depending on s.
  bool isSFreeExponent() const;

  ExpCoeff& operator+=(const ExpCoeff& rhs);
  ExpCoeff& operator-=(const ExpCoeff& rhs);
  ExpCoeff& operator*=(const Rational& c);
  ExpCoeff operator-() const;

  friend ExpCoeff operator+(ExpCoeff a, const ExpCoeff& b) { return a += b; }
  friend ExpCoeff operator-(ExpCoeff a, const ExpCoeff& b) { return a -= b; }
  friend ExpCoeff operator*(const ExpCoeff& a, const ExpCoeff& b);
  friend ExpCoeff operator*(ExpCoeff a, const Rational& c) { return a *= c; }
  friend bool operator==(const ExpCoeff&, const ExpCoeff&) = default;

  std::string toString() const;

 private:
  void add(const Exponent& e, const PolyCoeff& p);
  TermMap terms_;
};

/// s -> s+m: p(s+m)·β^{γs+γm+δ}.
ExpCoeff shiftCoeff(const ExpCoeff& c, long m);
/// Always throws DerivUnsupported; no in-scope identity differentiates β^{γs}.
ExpCoeff derivCoeff(const ExpCoeff& c);
inline ExpCoeff mulCoeff(const ExpCoeff& a, const ExpCoeff& b, int) { return a * b; }
inline ExpCoeff capCoeff(const ExpCoeff& c, int) { return c; }
ExpCoeff invertUnitCoeff(const ExpCoeff& c);

using ExpLambdaOp = BasicLambdaOp<ExpCoeff>;

/// Embeds an operator with ν- and Q-free coefficients.
ExpLambdaOp toExpOp(const LambdaOp& a);
std::string describe(const ExpLambdaOp& a);

}  // namespace toda
