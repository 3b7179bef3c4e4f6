#include "toda/exp_coeff.hpp"

#include "toda/errors.hpp"

namespace toda {

ExpCoeff::ExpCoeff(const PolyCoeff& p) { add({0, 0}, p); }

ExpCoeff ExpCoeff::term(const PolyCoeff& p, const Rational& gamma, const Rational& delta) {
  ExpCoeff c;
  c.add({gamma, delta}, p);
  return c;
}

void ExpCoeff::add(const Exponent& e, const PolyCoeff& p) {
  if (p.isZero()) return;
  auto [it, inserted] = terms_.try_emplace(e, p);
  if (!inserted) {
    it->second += p;
    if (it->second.isZero()) terms_.erase(it);
  }
}

bool ExpCoeff::isSFreeExponent() const {
  for (const auto& [e, p] : terms_) {
    if (e.first != 0) return false;
  }
  return true;
}

ExpCoeff& ExpCoeff::operator+=(const ExpCoeff& rhs) {
  for (const auto& [e, p] : rhs.terms_) add(e, p);
  return *this;
}

ExpCoeff& ExpCoeff::operator-=(const ExpCoeff& rhs) {
  for (const auto& [e, p] : rhs.terms_) add(e, -p);
  return *this;
}

ExpCoeff& ExpCoeff::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, p] : terms_) p *= c;
  return *this;
}

ExpCoeff ExpCoeff::operator-() const {
  ExpCoeff out(*this);
  return out *= Rational(-1);
}

ExpCoeff operator*(const ExpCoeff& a, const ExpCoeff& b) {
  ExpCoeff out;
  for (const auto& [ea, pa] : a.terms_) {
    for (const auto& [eb, pb] : b.terms_) {
      out.add({ea.first + eb.first, ea.second + eb.second}, pa * pb);
    }
  }
  return out;
}

std::string ExpCoeff::toString() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, p] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + p.toString() + ")";
    if (e.first == 0 && e.second == 0) continue;
    out += "*b^(";
    if (e.first != 0) out += toda::toString(e.first) + "*s";
    if (e.second != 0) out += std::string(e.first != 0 ? " + " : "") + toda::toString(e.second);
    out += ")";
  }
  return out;
}

ExpCoeff shiftCoeff(const ExpCoeff& c, long m) {
  ExpCoeff out;
  for (const auto& [e, p] : c.terms()) out += ExpCoeff::term(polyShift(p, m), e.first, e.second + e.first * m);
  return out;
}

ExpCoeff derivCoeff(const ExpCoeff&) {
  throw DerivUnsupported("derivatives of exponential-polynomial coefficients are not supported");
}

ExpCoeff invertUnitCoeff(const ExpCoeff& c) {
  if (c.terms().size() != 1) throw NotUnitriangular("leading coefficient " + c.toString() + " is not a unit");
  const auto& [e, p] = *c.terms().begin();
  if (e.first != 0 || !p.isConstant()) {
    throw NotUnitriangular("leading coefficient " + c.toString() + " depends on s");
  }
  return ExpCoeff::term(PolyCoeff(1 / p.constantTerm()), 0, -e.second);
}

ExpLambdaOp toExpOp(const LambdaOp& a) {
  if (a.logDegree() > 0) throw DerivUnsupported("logΛ terms cannot act on exponential coefficients");
  ExpLambdaOp::TermMap terms;
  for (const auto& [k, c] : a.terms()) {
    if (!c.isNuFree() || !c.isQFree()) throw std::invalid_argument("coefficient " + c.toString() + " is not in s alone");
    terms.emplace(k, ExpCoeff(c));
  }
  return ExpLambdaOp::truncated(terms, a.band(), -1);
}

std::string describe(const ExpLambdaOp& a) {
  std::string out;
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += "[" + it->second.toString() + "]";
    if (it->first.second != 0) out += "*L^" + std::to_string(it->first.second);
  }
  return (out.empty() ? "0" : out) + " on " + describe(a.band());
}

}  // namespace toda
