#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "toda/rational.hpp"

namespace toda {

/// Dense polynomial in one variable over ℚ, lowest degree first, no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  UniPoly(long c) : UniPoly(Rational(c)) {}  // NOLINT
  UniPoly(int c) : UniPoly(Rational(c)) {}   // NOLINT
  explicit UniPoly(std::vector<Rational> coeffs);

  /// The variable itself.
  static UniPoly x() { return UniPoly(std::vector<Rational>{0, 1}); }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool isZero() const { return c_.empty(); }
  bool isOne() const { return c_.size() == 1 && c_[0] == 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational operator[](int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }

  UniPoly& operator+=(const UniPoly& rhs);
  UniPoly& operator-=(const UniPoly& rhs);
  UniPoly& operator*=(const Rational& r);
  UniPoly operator-() const;

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(UniPoly a, const Rational& r) { return a *= r; }
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  /// Scales to leading coefficient 1 (zero stays zero).
  UniPoly monic() const;
  Rational evaluate(const Rational& x) const;
  std::string toString(const char* var = "s0") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder; throws std::domain_error on a zero divisor.
void divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r);
/// Monic gcd (zero only when both are zero).
UniPoly gcd(UniPoly a, UniPoly b);
UniPoly derivative(const UniPoly& p);

/// Element of ℚ(x) as num / Π p_i^{e_i}, where the p_i are monic polynomials
/// from a process-wide registry. Sums and products only add exponents, so no
/// gcd is taken during arithmetic; reduce() cancels registered factors by
/// trial division. The representation is not canonical, but the zero test
/// is exact and toString() prints the fully reduced quotient.
class RatFunc {
 public:
  using Factors = std::vector<std::pair<int, int>>;  // (registry index, exponent), sorted

  RatFunc() = default;
  RatFunc(const Rational& c) : num_(c) {}          // NOLINT(google-explicit-constructor)
  RatFunc(long c) : RatFunc(Rational(c)) {}        // NOLINT
  RatFunc(int c) : RatFunc(Rational(c)) {}         // NOLINT
  RatFunc(const UniPoly& p) : num_(p) {}           // NOLINT
  RatFunc(UniPoly num, const UniPoly& den);

  static RatFunc x() { return RatFunc(UniPoly::x()); }

  const UniPoly& num() const { return num_; }
  const Factors& denFactors() const { return den_; }
  /// The expanded denominator.
  UniPoly den() const;
  bool isZero() const { return num_.isZero(); }
  bool isPolynomial() const { return den_.empty(); }

  RatFunc& operator+=(const RatFunc& rhs);
  RatFunc& operator-=(const RatFunc& rhs);
  RatFunc& operator*=(const RatFunc& rhs);
  RatFunc& operator/=(const RatFunc& rhs);
  RatFunc operator-() const;
  RatFunc inverse() const;
  /// Cancels registered factors that divide the numerator.
  RatFunc& reduce();

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return (a - b).isZero(); }

  /// Throws std::domain_error at a pole.
  Rational evaluate(const Rational& x) const;
  /// Fully reduced num/den with monic den, as two polynomials.
  std::pair<UniPoly, UniPoly> canonical() const;
  std::string toString(const char* var = "s0") const;

  friend RatFunc derivative(const RatFunc& f);

 private:
  UniPoly num_;
  Factors den_;
};

RatFunc derivative(const RatFunc& f);

std::ostream& operator<<(std::ostream& os, const UniPoly& p);
std::ostream& operator<<(std::ostream& os, const RatFunc& f);

}  // namespace toda

namespace Eigen {

template <>
struct NumTraits<toda::RatFunc> : GenericNumTraits<toda::RatFunc> {
  using Real = toda::RatFunc;
  using NonInteger = toda::RatFunc;
  using Nested = toda::RatFunc;
  using Literal = toda::RatFunc;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 50,
    MulCost = 200
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
