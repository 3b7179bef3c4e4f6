#include "toda/intertwiner.hpp"

#include <string>

#include "toda/dressing.hpp"

namespace toda {

namespace {

void addExpResidual(ResidualReport& r, const std::string& part, const ExpLambdaOp& lhs, const ExpLambdaOp& rhs) {
  ExpLambdaOp diff = lhs - rhs;
  if (!diff.band().exact()) requireBandWidth(diff.band(), 2, part);
  r.parts.push_back({part, diff.band(), -1});
  for (const auto& [k, c] : diff.terms()) r.residual.push_back({part, k.first, k.second, 0, c.toString()});
}

ExpCoeff zeta(const Rational& w) { return ExpCoeff::beta(0, w / 2) - ExpCoeff::beta(0, -w / 2); }

ExpCoeff powerOf(const ExpCoeff& c, int k) {
  ExpCoeff out(1);
  for (int i = 0; i < k; ++i) out = out * c;
  return out;
}

LambdaOp expShift(const Rational& scale, int window) {
  return opExp(LambdaOp::shift(1) * scale, window);
}

LambdaOp powerOp(const LambdaOp& x, int k) {
  LambdaOp out = LambdaOp::identity();
  for (int i = 0; i < k; ++i) out = out * x;
  return out;
}

void checkParameters(int m, const Rational& u) {
  if (m < 1) throw std::invalid_argument("m must be a positive integer");
  if (u == 0) throw std::invalid_argument("u must be nonzero");
}

}  // namespace

Rational reciprocalPochhammer(int m, int k) {
  if (m < 0) throw std::invalid_argument("negative m");
  if (k < -m) return 0;
  return factorial(static_cast<unsigned>(m)) / factorial(static_cast<unsigned>(m + k));
}

ExpLambdaOp buildE(int k, const Rational& z) {
  return ExpLambdaOp::monomial(ExpCoeff::beta(z, z * (k - 1) / 2), k);
}

ExpLambdaOp buildA(int m, const Rational& u, int window, AWeight weight) {
  checkParameters(m, u);
  const Rational w = m * u;
  const ExpCoeff base = weight == AWeight::Zeta ? zeta(w) : ExpCoeff(w);
  ExpLambdaOp::TermMap terms;
  for (int k = -m; k <= window; ++k) {
    // (base/w)^m · base^k with m + k >= 0 on the whole k-range.
    ExpCoeff c = powerOf(base, m + k) * (reciprocalPochhammer(m, k) / power(w, m)) * buildE(k, w).coefficient(k);
    terms.emplace(ExpLambdaOp::Key{0, k}, c);
  }
  return ExpLambdaOp::truncated(terms, Band{-m, window, false, true});
}

ExpLambdaOp buildATilde(int m, const Rational& u, int window) {
  checkParameters(m, u);
  const Rational w = m * u;
  ExpLambdaOp::TermMap terms;
  for (int k = -m; k <= window; ++k) {
    terms.emplace(ExpLambdaOp::Key{0, k}, ExpCoeff(power(w, k) * reciprocalPochhammer(m, k)));
  }
  return ExpLambdaOp::truncated(terms, Band{-m, window, false, true});
}

LambdaOp dressingAt(const Rational& u, int window) {
  return substituteNu(buildV(1, window, window), 1 / u);
}

ResidualReport verifyBCH(int m, const Rational& u, int window, const LambdaOp& v) {
  return runCheck("bch", [&](ResidualReport& r) {
    checkParameters(m, u);
    const LambdaOp log = LambdaOp::logLambda();
    const LambdaOp h = LambdaOp::diagonal(PolyCoeff::H());
    const LambdaOp x = (LambdaOp::shift(1) + h) * u - log;
    const LambdaOp y = LambdaOp::shift(1) * u - log;
    for (int j = 1; j <= 3; ++j) {
      LambdaOp lhs = powerOp(x, j) * v, rhs = v * powerOp(y, j);
      requireBandWidth((lhs - rhs).band(), 2, "X^j V");
      r.compare("X^" + std::to_string(j) + " V = V Y^" + std::to_string(j), lhs, rhs);
    }
    const LambdaOp conj = expShift(1, window) * (h * u - log) * expShift(-1, window);
    r.compare("e^L(uH - log)e^-L = X", conj, x.clip(0, window));
    // Central commutator, then the BCH-factored form of 𝓔_{-m}(mu).
    r.compare("[muH, -m log] = m^2 u", commutator(h * (m * u), log * Rational(-m)),
              LambdaOp::diagonal(PolyCoeff(m * m * u)));
    const ExpLambdaOp factored = ExpLambdaOp::monomial(
        ExpCoeff::beta(0, -m * m * u / 2) * ExpCoeff::beta(m * u, -m * u / 2), -m);
    addExpResidual(r, "E_-m(mu) = e^{-m^2u/2} e^{muH} L^-m", buildE(-m, m * u), factored);
    r.compare("[uL, log] = 0", commutator(LambdaOp::shift(1) * u, log), LambdaOp());
  });
}

ResidualReport verifyBCH(int m, const Rational& u, int window) {
  return verifyBCH(m, u, window, dressingAt(u, window));
}

ResidualReport verifyAV(int m, const Rational& u, int window, const LambdaOp& v, const ExpLambdaOp& a) {
  ResidualReport out = verifyBCH(m, u, window, v);
  out.name = "av";
  ResidualReport closed = runCheck("closed forms", [&](ResidualReport& r) {
    const Rational w = m * u;
    const Rational scale = factorial(static_cast<unsigned>(m)) / power(w, m);
    const ExpLambdaOp conj = toExpOp(expShift(1, window)) * buildE(-m, w) * toExpOp(expShift(-1, window));
    addExpResidual(r, "A = (m!/w^m) e^L E_-m(w) e^-L", a.clip(-m, conj.band().high), conj * scale);
    const ExpLambdaOp tilde = toExpOp(expShift(w, window + m) * LambdaOp::shift(-m)) * scale;
    addExpResidual(r, "At = (m!/w^m) e^{wL} L^-m", buildATilde(m, u, window), tilde);
  });
  out.absorb(closed);
  out.seconds += closed.seconds;
  return out;
}

ResidualReport verifyAV(int m, const Rational& u, int window) {
  return verifyAV(m, u, window, dressingAt(u, window), buildA(m, u, window));
}

}  // namespace toda
