#include "toda/dressing.hpp"

#include <stdexcept>
#include <string>

#include "toda/factorial_basis.hpp"

namespace toda {

namespace {

PolyCoeff solve(const PolyCoeff& g, int step, AntidifferenceLog* log) {
  PolyCoeff f = antidifference(g, step);
  if (log) log->push_back({g, step, f});
  return f;
}

void checkParameters(int a, int nuOrder, int window) {
  if (a < 1) throw std::invalid_argument("step must be >= 1");
  if (nuOrder < 0) throw std::invalid_argument("ν-order must be >= 0");
  if (window < a) throw std::invalid_argument("window must be at least the step");
  if (window < nuOrder * a) {
    throw std::invalid_argument("window " + std::to_string(window) + " is below ν-order·step = " +
                                std::to_string(nuOrder * a) + ", where the last ν-component starts");
  }
}

Band lowerBand(int window) { return Band{-window, 0, true, false}; }

LambdaOp nuOp() { return LambdaOp::diagonal(PolyCoeff::nu()); }

}  // namespace

LambdaOp buildV0(int a, int window, AntidifferenceLog* log) {
  checkParameters(a, 0, window);
  std::vector<PolyCoeff> v(static_cast<std::size_t>(window) + 1);
  v[0] = PolyCoeff(1);
  const PolyCoeff minusH = -PolyCoeff::H();
  for (int n = 0; n + a <= window; ++n) {
    if (v[n].isZero()) continue;
    v[n + a] = solve(minusH * v[n], a, log);
  }
  LambdaOp::TermMap terms;
  for (int n = 0; n <= window; ++n) terms.emplace(LambdaOp::Key{0, -n}, v[n]);
  return LambdaOp::truncated(terms, lowerBand(window));
}

LambdaOp buildV(int a, int nuOrder, int window, AntidifferenceLog* log) {
  checkParameters(a, nuOrder, window);
  const LambdaOp v0 = buildV0(a, window, log);
  const LambdaOp v0inv = opInvert(v0, window);
  std::vector<LambdaOp> parts{v0};
  for (int k = 1; k <= nuOrder; ++k) {
    const LambdaOp r = v0inv * sDerivative(parts.back());
    LambdaOp::TermMap x;
    for (const auto& [key, f] : r.terms()) {
      const int n = -key.second;
      if (n + a > window) continue;
      x.emplace(LambdaOp::Key{0, -(n + a)}, solve(f, a, log));
    }
    LambdaOp vk = (v0 * LambdaOp::truncated(x, lowerBand(window))).clip(-window, 0);
    for (const auto& [key, c] : vk.terms()) {
      if (-key.second < k * a) {
        throw SparsityViolation("ν^" + std::to_string(k) + " coefficient at Λ^" + std::to_string(key.second) +
                                " is " + c.toString());
      }
    }
    parts.push_back(std::move(vk));
  }
  // Orders down to -window only see ν^k with k <= window/a, so the build is
  // complete in ν once nuOrder reaches that.
  const int cap = nuOrder * a >= window ? -1 : nuOrder;
  LambdaOp::TermMap terms;
  for (int k = 0; k <= nuOrder; ++k) {
    for (const auto& [key, c] : parts[k].terms()) {
      PolyCoeff term = c * PolyCoeff::monomial(1, 0, k);
      auto [it, inserted] = terms.try_emplace(key, term);
      if (!inserted) it->second += term;
    }
  }
  return LambdaOp::truncated(terms, lowerBand(window), cap);
}

LambdaOp buildVbar(int b, int nuOrder, int window, AntidifferenceLog* log) {
  return negateNu(adjoint(buildV(b, nuOrder, window, log)));
}

LambdaOp buildVbarDirect(int b, int nuOrder, int window) {
  checkParameters(b, nuOrder, window);
  const Band upper{0, window, false, true};
  // w_m(s) - w_m(s-b) = -H(s+m-b) w_{m-b}(s); with f(s) = w_m(s-b) this is
  // f(s+b) - f(s) = g(s) and w_m = f(s+b).
  std::vector<PolyCoeff> w(static_cast<std::size_t>(window) + 1);
  w[0] = PolyCoeff(1);
  for (int m = b; m <= window; ++m) {
    if (w[m - b].isZero()) continue;
    PolyCoeff g = -(polyShift(PolyCoeff::H(), m - b) * w[m - b]);
    w[m] = polyShift(antidifference(g, b), b);
  }
  LambdaOp::TermMap terms;
  for (int m = 0; m <= window; ++m) terms.emplace(LambdaOp::Key{0, m}, w[m]);
  const LambdaOp vb0 = LambdaOp::truncated(terms, upper);
  const LambdaOp vb0inv = opInvert(vb0, window);
  std::vector<LambdaOp> parts{vb0};
  for (int k = 1; k <= nuOrder; ++k) {
    // [Λ^{-b}, yΛ^m] = (y(s-b) - y(s))Λ^{m-b}; solve y_m(s-b) - y_m(s) = r_{m-b}.
    const LambdaOp r = sDerivative(parts.back()) * vb0inv;
    LambdaOp::TermMap y;
    for (const auto& [key, rc] : r.terms()) {
      const int m = key.second + b;
      if (m > window) continue;
      y.emplace(LambdaOp::Key{0, m}, polyShift(antidifference(-rc, b), b));
    }
    parts.push_back((LambdaOp::truncated(y, upper) * vb0).clip(0, window));
  }
  const int cap = nuOrder * b >= window ? -1 : nuOrder;
  LambdaOp::TermMap all;
  for (int k = 0; k <= nuOrder; ++k) {
    for (const auto& [key, c] : parts[k].terms()) {
      PolyCoeff term = c * PolyCoeff::monomial(1, 0, k);
      auto [it, inserted] = all.try_emplace(key, term);
      if (!inserted) it->second += term;
    }
  }
  return LambdaOp::truncated(all, upper, cap);
}

ResidualReport verifyVRel(const LambdaOp& v, int a, int nuOrder) {
  return runCheck("v", [&](ResidualReport& r) {
    const LambdaOp vc = v.capNu(nuOrder);
    const LambdaOp nuLog = nuOp() * LambdaOp::logLambda();
    const LambdaOp left = LambdaOp::shift(a) + LambdaOp::diagonal(PolyCoeff::H()) - nuLog;
    const LambdaOp right = LambdaOp::shift(a) - nuLog;
    r.compare("(L^a+H-nu log)V = V(L^a-nu log)", (left * vc).capNu(nuOrder), (vc * right).capNu(nuOrder));
  });
}

ResidualReport verifyVbarRel(const LambdaOp& vbar, int b, int nuOrder) {
  return runCheck("vbar", [&](ResidualReport& r) {
    const LambdaOp vc = vbar.capNu(nuOrder);
    const LambdaOp nuLog = nuOp() * LambdaOp::logLambda();
    const LambdaOp right = LambdaOp::shift(-b) + LambdaOp::diagonal(PolyCoeff::H()) - nuLog;
    const LambdaOp left = LambdaOp::shift(-b) - nuLog;
    r.compare("Vbar(L^-b+H-nu log) = (L^-b-nu log)Vbar", (vc * right).capNu(nuOrder), (left * vc).capNu(nuOrder));
  });
}

std::vector<std::pair<int, int>> sparsityViolations(const LambdaOp& v, int step) {
  std::vector<std::pair<int, int>> bad;
  for (const auto& [key, c] : v.terms()) {
    const int n = key.second < 0 ? -key.second : key.second;
    for (const auto& [m, coeff] : c.terms()) {
      if (static_cast<long>(m.nu) * step > n) {
        bad.emplace_back(m.nu, key.second);
        break;
      }
    }
  }
  return bad;
}

DressingPair buildDressingPair(int a, int b, int nuOrder, int window, AntidifferenceLog* log) {
  return DressingPair{buildV(a, nuOrder, window, log), buildVbar(b, nuOrder, window, log), a, b, nuOrder, window};
}

nlohmann::json toJson(const DressingPair& p) {
  return {{"a", p.a},           {"b", p.b},           {"nuOrder", p.nuOrder},
          {"window", p.window}, {"V", toJson(p.v)}, {"Vbar", toJson(p.vbar)}};
}

DressingPair dressingPairFromJson(const nlohmann::json& j) {
  try {
    return DressingPair{lambdaOpFromJson(j.at("V")),  lambdaOpFromJson(j.at("Vbar")), j.at("a").get<int>(),
                        j.at("b").get<int>(),         j.at("nuOrder").get<int>(),     j.at("window").get<int>()};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("dressing pair: ") + e.what());
  }
}

LambdaOp dropNuComponent(const LambdaOp& v, int j) {
  return v.mapCoefficients(
      [j](const PolyCoeff& c) {
        PolyCoeff out;
        for (const auto& [m, x] : c.terms()) {
          if (m.nu != j) out.addTerm(m, x);
        }
        return out;
      },
      v.nuCap());
}

}  // namespace toda
