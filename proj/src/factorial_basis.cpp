#include "toda/factorial_basis.hpp"

#include <stdexcept>

namespace toda {

namespace {

// Coefficients of s^0, s^1, ... with ν and Q kept inside.
std::vector<PolyCoeff> bySDegree(const PolyCoeff& p) {
  std::vector<PolyCoeff> out(static_cast<std::size_t>(std::max(p.sDegree(), 0)) + 1);
  for (const auto& [m, c] : p.terms()) out[static_cast<std::size_t>(m.s)].addTerm({0, m.nu, m.q}, c);
  return out;
}

void checkStep(int step) {
  if (step < 1) throw std::invalid_argument("factorial step must be >= 1");
}

}  // namespace

PolyCoeff factorialProduct(int k, int step) {
  checkStep(step);
  PolyCoeff out(1);
  for (int j = 0; j < k; ++j) out *= PolyCoeff::s() - PolyCoeff(static_cast<long>(j) * step);
  return out;
}

FactorialBasisExpansion toFactorialBasis(const PolyCoeff& p, int step) {
  checkStep(step);
  FactorialBasisExpansion e{step, {}};
  std::vector<PolyCoeff> rest = bySDegree(p);
  long node = 0;
  while (!(rest.size() == 1 && rest[0].isZero()) && !rest.empty()) {
    // Horner division by (s - node): quotient q and remainder r = rest(node).
    const std::size_t n = rest.size();
    std::vector<PolyCoeff> quotient(n > 1 ? n - 1 : 1);
    PolyCoeff carry;
    for (std::size_t i = n; i-- > 0;) {
      PolyCoeff cur = rest[i] + carry * Rational(node);
      if (i == 0) {
        e.coefficients.push_back(cur);
      } else {
        quotient[i - 1] = cur;
      }
      carry = cur;
    }
    if (n == 1) break;
    rest = std::move(quotient);
    node += step;
  }
  while (!e.coefficients.empty() && e.coefficients.back().isZero()) e.coefficients.pop_back();
  return e;
}

PolyCoeff fromFactorialBasis(const FactorialBasisExpansion& e) {
  PolyCoeff out;
  PolyCoeff pk(1);
  for (std::size_t k = 0; k < e.coefficients.size(); ++k) {
    out += e.coefficients[k] * pk;
    pk *= PolyCoeff::s() - PolyCoeff(static_cast<long>(k) * e.step);
  }
  return out;
}

PolyCoeff forwardDifference(const PolyCoeff& f, int step) { return polyShift(f, step) - f; }

PolyCoeff antidifference(const PolyCoeff& g, int step) {
  checkStep(step);
  FactorialBasisExpansion e = toFactorialBasis(g, step);
  FactorialBasisExpansion lifted{step, {PolyCoeff()}};
  for (std::size_t k = 0; k < e.coefficients.size(); ++k) {
    lifted.coefficients.push_back(e.coefficients[k] * Rational(1, static_cast<long>((k + 1) * step)));
  }
  return fromFactorialBasis(lifted);
}

}  // namespace toda
