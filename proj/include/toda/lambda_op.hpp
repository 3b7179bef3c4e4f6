#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "toda/errors.hpp"
#include "toda/poly_coeff.hpp"

namespace toda {

// Coefficient-ring hooks used by the operator template. ExpCoeff provides
// its own overloads in exp_coeff.hpp.
inline PolyCoeff shiftCoeff(const PolyCoeff& c, long m) { return polyShift(c, m); }
inline PolyCoeff derivCoeff(const PolyCoeff& c) { return polyDeriv(c); }
inline PolyCoeff mulCoeff(const PolyCoeff& a, const PolyCoeff& b, int nuCap) {
  return mulTruncated(a, b, nuCap);
}
inline PolyCoeff capCoeff(const PolyCoeff& c, int nuCap) { return truncateNu(c, nuCap); }
/// Inverse of an s-free unit c·Q^k; anything else is not invertible here.
PolyCoeff invertUnitCoeff(const PolyCoeff& c);

/// Range of Λ-orders whose coefficients are exact, plus whether everything
/// past either end is known to vanish.
struct Band {
  int low = 0;
  int high = 0;
  bool boundedAbove = true;
  bool boundedBelow = true;

  bool empty() const { return low > high; }
  bool trusts(int n) const { return n >= low && n <= high; }
  bool knownZero(int n) const { return (boundedAbove && n > high) || (boundedBelow && n < low); }
  bool known(int n) const { return trusts(n) || knownZero(n); }
  bool exact() const { return boundedAbove && boundedBelow; }
  int width() const { return high - low + 1; }

  friend bool operator==(const Band&, const Band&) = default;
};

Band productBand(const Band& a, const Band& b);
Band sumBand(const Band& a, const Band& b);
std::string describe(const Band& b);
std::ostream& operator<<(std::ostream& os, const Band& b);

inline int minCap(int a, int b) {
  if (a < 0) return b;
  if (b < 0) return a;
  return std::min(a, b);
}

/// Truncated two-sided series Σ f_{d,n}(s) Λ^n (logΛ)^d in normal order
/// (coefficient left, Λ-power, then logΛ-power).
///
/// Only the orders of band() are trusted; a nonnegative nuCap() means the
/// coefficients are exact modulo ν^(nuCap+1).
template <class C>
class BasicLambdaOp {
 public:
  using Coeff = C;
  using Key = std::pair<int, int>;  // (logΛ-degree, Λ-order)
  using TermMap = std::map<Key, C>;

  BasicLambdaOp() = default;

  /// Finite operator: every order outside the stored ones is exactly zero.
  static BasicLambdaOp exact(const TermMap& terms, int nuCap = -1) {
    BasicLambdaOp op;
    op.nuCap_ = nuCap;
    for (const auto& [k, c] : terms) op.put(k, capCoeff(c, nuCap));
    if (!op.terms_.empty()) {
      op.band_.low = op.minOrder();
      op.band_.high = op.maxOrder();
    }
    return op;
  }

  static BasicLambdaOp truncated(const TermMap& terms, const Band& band, int nuCap = -1) {
    if (band.empty()) throw EmptyBand("operator band " + describe(band) + " is empty");
    BasicLambdaOp op;
    op.band_ = band;
    op.nuCap_ = nuCap;
    for (const auto& [k, c] : terms) {
      if (!band.trusts(k.second)) {
        if (c.isZero()) continue;
        throw std::invalid_argument("stored order " + std::to_string(k.second) + " outside band " +
                                    describe(band));
      }
      op.put(k, capCoeff(c, nuCap));
    }
    return op;
  }

  static BasicLambdaOp identity() { return diagonal(C(1)); }
  static BasicLambdaOp diagonal(const C& f) { return exact({{{0, 0}, f}}); }
  /// f(s)·Λ^n.
  static BasicLambdaOp monomial(const C& f, int n, int logDeg = 0) { return exact({{{logDeg, n}, f}}); }
  static BasicLambdaOp shift(int n) { return monomial(C(1), n); }
  static BasicLambdaOp logLambda() { return monomial(C(1), 0, 1); }

  const TermMap& terms() const { return terms_; }
  const Band& band() const { return band_; }
  int nuCap() const { return nuCap_; }
  bool isZero() const { return terms_.empty(); }
  bool isExactZero() const { return terms_.empty() && band_.exact(); }

  C coefficient(int order, int logDeg = 0) const {
    auto it = terms_.find({logDeg, order});
    return it == terms_.end() ? C() : it->second;
  }

  int logDegree() const {
    int d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first);
    return d;
  }
  int minOrder() const {
    int n = INT_MAX;
    for (const auto& [k, c] : terms_) n = std::min(n, k.second);
    return terms_.empty() ? 0 : n;
  }
  int maxOrder() const {
    int n = INT_MIN;
    for (const auto& [k, c] : terms_) n = std::max(n, k.second);
    return terms_.empty() ? 0 : n;
  }

  /// Orders present at logΛ-degree 0 and their coefficients, ascending.
  std::vector<std::pair<int, C>> orders(int logDeg = 0) const {
    std::vector<std::pair<int, C>> out;
    for (const auto& [k, c] : terms_) {
      if (k.first == logDeg) out.emplace_back(k.second, c);
    }
    return out;
  }

  /// Applies f to each coefficient; band kept.
  template <class F>
  BasicLambdaOp mapCoefficients(F&& f, int nuCap) const {
    BasicLambdaOp out;
    out.band_ = band_;
    out.nuCap_ = nuCap;
    for (const auto& [k, c] : terms_) out.put(k, f(c));
    return out;
  }

  /// Keeps only orders in [lo, hi]; the band shrinks to match.
  BasicLambdaOp clip(int lo, int hi) const {
    Band b = band_;
    if (hi < b.high) {
      b.high = hi;
      b.boundedAbove = false;
    }
    if (lo > b.low) {
      b.low = lo;
      b.boundedBelow = false;
    }
    if (b.empty()) throw EmptyBand("clip to [" + std::to_string(lo) + ", " + std::to_string(hi) + "] leaves nothing");
    BasicLambdaOp out;
    out.band_ = b;
    out.nuCap_ = nuCap_;
    for (const auto& [k, c] : terms_) {
      if (b.trusts(k.second)) out.terms_.emplace(k, c);
    }
    return out;
  }

  BasicLambdaOp capNu(int nuCap) const {
    const int cap = minCap(nuCap_, nuCap);
    return mapCoefficients([cap](const C& c) { return capCoeff(c, cap); }, cap);
  }

  BasicLambdaOp& operator*=(const Rational& r) {
    if (r == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= r;
    return *this;
  }

  friend BasicLambdaOp operator*(BasicLambdaOp a, const Rational& r) { return a *= r; }
  friend BasicLambdaOp operator*(const Rational& r, BasicLambdaOp a) { return a *= r; }
  friend BasicLambdaOp operator-(const BasicLambdaOp& a) { return a * Rational(-1); }
  friend BasicLambdaOp operator+(const BasicLambdaOp& a, const BasicLambdaOp& b) { return combine(a, b, 1); }
  friend BasicLambdaOp operator-(const BasicLambdaOp& a, const BasicLambdaOp& b) { return combine(a, b, -1); }
  friend BasicLambdaOp operator*(const BasicLambdaOp& a, const BasicLambdaOp& b) { return multiply(a, b); }
  friend bool operator==(const BasicLambdaOp&, const BasicLambdaOp&) = default;

  /// Adds c at (logDeg, order). The order must be trusted.
  void add(int order, const C& c, int logDeg = 0) {
    if (!band_.trusts(order)) throw std::invalid_argument("order outside band");
    put({logDeg, order}, capCoeff(c, nuCap_));
  }

 private:
  void put(const Key& k, const C& c) {
    if (c.isZero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.isZero()) terms_.erase(it);
    }
  }

  static BasicLambdaOp combine(const BasicLambdaOp& a, const BasicLambdaOp& b, int sign) {
    BasicLambdaOp out;
    if (a.isExactZero()) {
      out = b.capNu(a.nuCap_);
      if (sign < 0) out *= Rational(-1);
      return out;
    }
    if (b.isExactZero()) return a.capNu(b.nuCap_);
    out.band_ = sumBand(a.band_, b.band_);
    out.nuCap_ = minCap(a.nuCap_, b.nuCap_);
    for (const auto& [k, c] : a.terms_) {
      if (out.band_.trusts(k.second)) out.put(k, capCoeff(c, out.nuCap_));
    }
    for (const auto& [k, c] : b.terms_) {
      if (!out.band_.trusts(k.second)) continue;
      if (sign > 0) {
        out.put(k, capCoeff(c, out.nuCap_));
      } else {
        out.put(k, capCoeff(-c, out.nuCap_));
      }
    }
    return out;
  }

  static BasicLambdaOp multiply(const BasicLambdaOp& a, const BasicLambdaOp& b) {
    BasicLambdaOp out;
    out.nuCap_ = minCap(a.nuCap_, b.nuCap_);
    if (a.isExactZero() || b.isExactZero()) return out;
    out.band_ = productBand(a.band_, b.band_);
    const int cap = out.nuCap_;
    for (const auto& [ka, fa] : a.terms_) {
      const auto [d1, i] = ka;
      for (const auto& [kb, gb] : b.terms_) {
        const auto [d2, j] = kb;
        if (!out.band_.trusts(i + j)) continue;
        // L^{d1} g = Σ_r C(d1,r) g^{(r)} L^{d1-r}, then Λ^i g = g(s+i) Λ^i.
        C g = gb;
        for (int r = 0; r <= d1; ++r) {
          if (r > 0) g = derivCoeff(g);
          if (g.isZero()) break;
          C term = mulCoeff(fa, shiftCoeff(g, i), cap);
          if (r > 0) term *= Rational(binomial(static_cast<unsigned>(d1), static_cast<unsigned>(r)));
          out.put({d1 - r + d2, i + j}, term);
        }
      }
    }
    return out;
  }

  TermMap terms_;
  Band band_{};
  int nuCap_ = -1;
};

using LambdaOp = BasicLambdaOp<PolyCoeff>;

template <class C>
BasicLambdaOp<C> commutator(const BasicLambdaOp<C>& a, const BasicLambdaOp<C>& b) {
  return a * b - b * a;
}

/// Formal adjoint: Λ* = Λ⁻¹, f* = f, (logΛ)* = −logΛ, order reversed.
/// (fΛ^n L^d)* = (−1)^d L^d f(s−n) Λ^{−n}.
template <class C>
BasicLambdaOp<C> adjoint(const BasicLambdaOp<C>& a) {
  typename BasicLambdaOp<C>::TermMap out;
  for (const auto& [k, f] : a.terms()) {
    const auto [d, n] = k;
    C g = shiftCoeff(f, -n);
    for (int r = 0; r <= d; ++r) {
      if (r > 0) g = derivCoeff(g);
      if (g.isZero()) break;
      C term = g * Rational(binomial(static_cast<unsigned>(d), static_cast<unsigned>(r)));
      if (d % 2) term = -term;
      auto [it, inserted] = out.try_emplace({d - r, -n}, term);
      if (!inserted) it->second += term;
    }
  }
  const Band& b = a.band();
  Band flipped{-b.high, -b.low, b.boundedBelow, b.boundedAbove};
  return BasicLambdaOp<C>::truncated(out, flipped, a.nuCap());
}

enum class Part { NonNegative, Negative };

template <class C>
BasicLambdaOp<C> project(const BasicLambdaOp<C>& a, Part part) {
  Band b = a.band();
  typename BasicLambdaOp<C>::TermMap kept;
  const bool nonneg = part == Part::NonNegative;
  for (const auto& [k, c] : a.terms()) {
    if ((k.second >= 0) == nonneg) kept.emplace(k, c);
  }
  if (nonneg) {
    if (b.boundedAbove && b.high < 0) return BasicLambdaOp<C>::exact({}, a.nuCap());
    if (b.boundedBelow || b.low <= 0) {
      b.low = std::max(b.low, 0);
      b.boundedBelow = true;
    }
  } else {
    if (b.boundedBelow && b.low >= 0) return BasicLambdaOp<C>::exact({}, a.nuCap());
    if (b.boundedAbove || b.high >= -1) {
      b.high = std::min(b.high, -1);
      b.boundedAbove = true;
    }
  }
  return BasicLambdaOp<C>::truncated(kept, b, a.nuCap());
}

/// Σ c_k N^k for N of one-signed support, truncated at orders beyond ±window.
/// The tail k > kmax only reaches orders past the window.
template <class C>
BasicLambdaOp<C> powerSeries(const BasicLambdaOp<C>& n, const std::vector<Rational>& coeffs, int window,
                             bool positive) {
  using Op = BasicLambdaOp<C>;
  Op acc = Op::exact({{{0, 0}, C(coeffs.empty() ? Rational(0) : coeffs[0])}}, n.nuCap());
  Op power = Op::identity();
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    power = power * n;
    power = positive ? power.clip(0, window) : power.clip(-window, 0);
    if (coeffs[k] != 0) acc = acc + power * coeffs[k];
  }
  acc = positive ? acc.clip(0, window) : acc.clip(-window, 0);
  // The dropped tail starts just past the window, so that side is open.
  Band b = acc.band();
  if (positive) {
    b.high = b.boundedAbove ? window : std::min(b.high, window);
    b.boundedAbove = false;
  } else {
    b.low = b.boundedBelow ? -window : std::max(b.low, -window);
    b.boundedBelow = false;
  }
  return BasicLambdaOp<C>::truncated(acc.terms(), b, acc.nuCap());
}

namespace detail {

// Smallest |order| N can reach, after checking N's support is one-signed.
template <class C>
int supportGap(const BasicLambdaOp<C>& n, bool& positive) {
  if (n.logDegree() > 0) throw MixedSign("series argument carries logΛ");
  const Band& b = n.band();
  bool pos = true, neg = true;
  for (const auto& [k, c] : n.terms()) {
    if (k.second <= 0) pos = false;
    if (k.second >= 0) neg = false;
  }
  // Unknown orders may sit on either side unless the band closes them off.
  if (pos && !b.boundedBelow) pos = false;
  if (neg && !b.boundedAbove) neg = false;
  if (!pos && !neg) throw MixedSign("series argument has support of both signs");
  positive = pos;
  // Stored orders are the trusted support; untrusted ones start past the band.
  int gap = INT_MAX;
  for (const auto& [k, c] : n.terms()) gap = std::min(gap, pos ? k.second : -k.second);
  if (pos && !b.boundedAbove) gap = std::min(gap, b.high + 1);
  if (neg && !b.boundedBelow) gap = std::min(gap, 1 - b.low);
  return std::max(gap == INT_MAX ? 1 : gap, 1);
}

}  // namespace detail

/// exp(A) = Σ A^k/k!, for A with all orders > 0 or all < 0, truncated at ±window.
template <class C>
BasicLambdaOp<C> opExp(const BasicLambdaOp<C>& a, int window) {
  if (a.isZero() && a.band().exact()) return BasicLambdaOp<C>::identity();
  bool positive = true;
  const int gap = detail::supportGap(a, positive);
  const int kmax = window / gap;
  std::vector<Rational> coeffs;
  for (int k = 0; k <= kmax; ++k) coeffs.push_back(1 / factorial(static_cast<unsigned>(k)));
  return powerSeries(a, coeffs, window, positive);
}

/// Neumann series for A = c0(1 + N), c0 an invertible s-free scalar.
template <class C>
BasicLambdaOp<C> opInvert(const BasicLambdaOp<C>& a, int depth) {
  using Op = BasicLambdaOp<C>;
  if (a.logDegree() > 0) throw NotUnitriangular("operator carries logΛ");
  if (!a.band().trusts(0)) throw NotUnitriangular("order 0 is not trusted");
  const C c0 = a.coefficient(0);
  if (c0.isZero()) throw NotUnitriangular("order-0 coefficient vanishes");
  const C inv = invertUnitCoeff(c0);
  Op n = Op::diagonal(inv) * a - Op::identity();
  if (n.isZero() && n.band().exact()) return Op::diagonal(inv);
  bool positive = true;
  int gap = 1;
  try {
    gap = detail::supportGap(n, positive);
  } catch (const MixedSign& e) {
    throw NotUnitriangular(std::string("not unitriangular: ") + e.what());
  }
  const int kmax = depth / gap;
  std::vector<Rational> coeffs;
  for (int k = 0; k <= kmax; ++k) coeffs.push_back(k % 2 ? Rational(-1) : Rational(1));
  return powerSeries(n, coeffs, depth, positive) * Op::diagonal(inv);
}

/// Q^H A Q^{-H}: the Λ^n coefficient picks up Q^{-n}.
LambdaOp conjQH(const LambdaOp& a);
/// Inverse conjugation Q^{-H} A Q^{H}.
LambdaOp unconjQH(const LambdaOp& a);
LambdaOp negateNu(const LambdaOp& a);
LambdaOp substituteNu(const LambdaOp& a, const Rational& nu);
/// Coefficient of ν^j, as a ν-free operator on the same band.
LambdaOp nuComponent(const LambdaOp& a, int j);
/// d/ds of each coefficient; equals [logΛ, A].
LambdaOp sDerivative(const LambdaOp& a);

nlohmann::json toJson(const LambdaOp& a);
LambdaOp lambdaOpFromJson(const nlohmann::json& j);
std::string describe(const LambdaOp& a);
std::ostream& operator<<(std::ostream& os, const LambdaOp& a);

}  // namespace toda
