#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>

#include "toda/rational.hpp"

namespace toda {

/// Exponents of s, ν and Q in a single monomial. Q may carry a negative power.
struct Monomial {
  int s = 0;
  int nu = 0;
  int q = 0;

  auto operator<=>(const Monomial&) const = default;
};

/// Sparse exact polynomial in s and ν with Laurent dependence on Q.
///
/// This is the coefficient ring of every difference operator in the library.
/// Zero coefficients are never stored, so structural equality is equality of
/// polynomials.
class PolyCoeff {
 public:
  using TermMap = std::map<Monomial, Rational>;

  PolyCoeff() = default;
  PolyCoeff(const Rational& c);  // NOLINT(google-explicit-constructor)
  PolyCoeff(long c);             // NOLINT(google-explicit-constructor)
  PolyCoeff(int c) : PolyCoeff(static_cast<long>(c)) {}  // NOLINT

  static PolyCoeff monomial(const Rational& c, int sDeg, int nuDeg = 0, int qDeg = 0);
  static PolyCoeff s() { return monomial(1, 1); }
  static PolyCoeff nu() { return monomial(1, 0, 1); }
  static PolyCoeff Q(int k = 1) { return monomial(1, 0, 0, k); }
  /// H = s - 1/2, the lattice counterpart of the energy operator.
  static PolyCoeff H();

  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;

  bool isQFree() const;
  bool isNuFree() const;
  bool isSFree() const;
  /// True when the polynomial is a single rational constant (possibly zero).
  bool isConstant() const;
  Rational constantTerm() const { return coefficient({}); }

  int sDegree() const;   // -1 for zero
  int nuDegree() const;  // -1 for zero
  int minQDegree() const;
  int maxQDegree() const;

  PolyCoeff& operator+=(const PolyCoeff& rhs);
  PolyCoeff& operator-=(const PolyCoeff& rhs);
  PolyCoeff& operator*=(const PolyCoeff& rhs);
  PolyCoeff& operator*=(const Rational& c);
  PolyCoeff operator-() const;

  friend PolyCoeff operator+(PolyCoeff a, const PolyCoeff& b) { return a += b; }
  friend PolyCoeff operator-(PolyCoeff a, const PolyCoeff& b) { return a -= b; }
  friend PolyCoeff operator*(const PolyCoeff& a, const PolyCoeff& b);
  friend PolyCoeff operator*(PolyCoeff a, const Rational& c) { return a *= c; }
  friend PolyCoeff operator*(const Rational& c, PolyCoeff a) { return a *= c; }
  friend bool operator==(const PolyCoeff&, const PolyCoeff&) = default;

  /// Adds c·m without creating a zero entry.
  void addTerm(const Monomial& m, const Rational& c);

  std::string toString() const;
  static PolyCoeff parse(std::string_view text);

 private:
  TermMap terms_;
};

/// Product with every ν-power above `nuCap` discarded (nuCap < 0: no cap).
PolyCoeff mulTruncated(const PolyCoeff& a, const PolyCoeff& b, int nuCap);
PolyCoeff truncateNu(const PolyCoeff& p, int nuCap);

/// p(s) -> p(s + m), expanded.
PolyCoeff polyShift(const PolyCoeff& p, long m);
/// d/ds; ν and Q are constants.
PolyCoeff polyDeriv(const PolyCoeff& p);
/// ν -> -ν.
PolyCoeff negateNu(const PolyCoeff& p);
/// Substitutes a rational value for ν.
PolyCoeff substituteNu(const PolyCoeff& p, const Rational& nu);
/// Coefficient of ν^j as a ν-free polynomial.
PolyCoeff nuComponent(const PolyCoeff& p, int j);
/// Exact evaluation; Q must be nonzero whenever negative Q-powers occur.
Rational evaluate(const PolyCoeff& p, const Rational& s, const Rational& nu, const Rational& q);
/// Substitutes values for ν and Q, keeping s symbolic.
PolyCoeff specialize(const PolyCoeff& p, const Rational& nu, const Rational& q);

}  // namespace toda
