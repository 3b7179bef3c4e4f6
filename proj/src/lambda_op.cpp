#include "toda/lambda_op.hpp"

#include <climits>

namespace toda {

namespace {

[[noreturn]] void emptyProduct(const Band& a, const Band& b) {
  throw EmptyBand("product of bands " + describe(a) + " and " + describe(b) + " trusts no order");
}

}  // namespace

PolyCoeff invertUnitCoeff(const PolyCoeff& c) {
  if (c.size() != 1) throw NotUnitriangular("leading coefficient " + c.toString() + " is not a unit");
  const auto& [m, v] = *c.terms().begin();
  if (m.s != 0 || m.nu != 0) throw NotUnitriangular("leading coefficient " + c.toString() + " is not a unit");
  return PolyCoeff::monomial(1 / v, 0, 0, -m.q);
}

Band productBand(const Band& a, const Band& b) {
  // An order n is exact when every pair (i, n-i) with an untrusted factor
  // meets a known zero in the other factor.
  long lo = LONG_MIN, hi = LONG_MAX;
  if (!a.boundedAbove) {
    if (!b.boundedBelow) emptyProduct(a, b);
    hi = std::min<long>(hi, long(a.high) + b.low);
  }
  if (!a.boundedBelow) {
    if (!b.boundedAbove) emptyProduct(a, b);
    lo = std::max<long>(lo, long(a.low) + b.high);
  }
  if (!b.boundedAbove) {
    if (!a.boundedBelow) emptyProduct(a, b);
    hi = std::min<long>(hi, long(a.low) + b.high);
  }
  if (!b.boundedBelow) {
    if (!a.boundedAbove) emptyProduct(a, b);
    lo = std::max<long>(lo, long(a.high) + b.low);
  }
  Band out;
  out.boundedAbove = a.boundedAbove && b.boundedAbove;
  out.boundedBelow = a.boundedBelow && b.boundedBelow;
  out.high = static_cast<int>(out.boundedAbove ? a.high + b.high : hi);
  out.low = static_cast<int>(out.boundedBelow ? a.low + b.low : lo);
  if (out.empty()) emptyProduct(a, b);
  return out;
}

Band sumBand(const Band& a, const Band& b) {
  Band out;
  out.boundedAbove = a.boundedAbove && b.boundedAbove;
  out.boundedBelow = a.boundedBelow && b.boundedBelow;
  if (out.boundedAbove) {
    out.high = std::max(a.high, b.high);
  } else if (a.boundedAbove) {
    out.high = b.high;
  } else if (b.boundedAbove) {
    out.high = a.high;
  } else {
    out.high = std::min(a.high, b.high);
  }
  if (out.boundedBelow) {
    out.low = std::min(a.low, b.low);
  } else if (a.boundedBelow) {
    out.low = b.low;
  } else if (b.boundedBelow) {
    out.low = a.low;
  } else {
    out.low = std::max(a.low, b.low);
  }
  if (out.empty()) {
    throw EmptyBand("sum of bands " + describe(a) + " and " + describe(b) + " trusts no order");
  }
  return out;
}

std::string describe(const Band& b) {
  return std::string(b.boundedBelow ? "[" : "(") + std::to_string(b.low) + ", " + std::to_string(b.high) +
         (b.boundedAbove ? "]" : ")");
}

LambdaOp conjQH(const LambdaOp& a) {
  if (a.logDegree() > 0) throw std::invalid_argument("conjQH needs a logΛ-free operator");
  LambdaOp::TermMap out;
  for (const auto& [k, c] : a.terms()) out.emplace(k, c * PolyCoeff::Q(-k.second));
  return LambdaOp::truncated(out, a.band(), a.nuCap());
}

LambdaOp unconjQH(const LambdaOp& a) {
  if (a.logDegree() > 0) throw std::invalid_argument("unconjQH needs a logΛ-free operator");
  LambdaOp::TermMap out;
  for (const auto& [k, c] : a.terms()) out.emplace(k, c * PolyCoeff::Q(k.second));
  return LambdaOp::truncated(out, a.band(), a.nuCap());
}

LambdaOp negateNu(const LambdaOp& a) {
  return a.mapCoefficients([](const PolyCoeff& c) { return negateNu(c); }, a.nuCap());
}

LambdaOp substituteNu(const LambdaOp& a, const Rational& nu) {
  if (a.nuCap() >= 0) throw std::invalid_argument("cannot substitute ν into a ν-truncated operator");
  return a.mapCoefficients([&nu](const PolyCoeff& c) { return substituteNu(c, nu); }, -1);
}

LambdaOp nuComponent(const LambdaOp& a, int j) {
  if (a.nuCap() >= 0 && j > a.nuCap()) throw std::invalid_argument("ν-order beyond the operator's cap");
  return a.mapCoefficients([j](const PolyCoeff& c) { return nuComponent(c, j); }, -1);
}

LambdaOp sDerivative(const LambdaOp& a) {
  return a.mapCoefficients([](const PolyCoeff& c) { return polyDeriv(c); }, a.nuCap());
}

nlohmann::json toJson(const LambdaOp& a) {
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [k, c] : a.terms()) terms[std::to_string(k.first)][std::to_string(k.second)] = c.toString();
  const Band& b = a.band();
  return {{"terms", terms},
          {"band", {{"low", b.low}, {"high", b.high}}},
          {"boundedAbove", b.boundedAbove},
          {"boundedBelow", b.boundedBelow},
          {"nuCap", a.nuCap()}};
}

LambdaOp lambdaOpFromJson(const nlohmann::json& j) {
  try {
    Band b;
    b.low = j.at("band").at("low").get<int>();
    b.high = j.at("band").at("high").get<int>();
    b.boundedAbove = j.at("boundedAbove").get<bool>();
    b.boundedBelow = j.at("boundedBelow").get<bool>();
    LambdaOp::TermMap terms;
    for (const auto& [d, byOrder] : j.at("terms").items()) {
      for (const auto& [n, text] : byOrder.items()) {
        terms.emplace(LambdaOp::Key{std::stoi(d), std::stoi(n)}, PolyCoeff::parse(text.get<std::string>()));
      }
    }
    return LambdaOp::truncated(terms, b, j.at("nuCap").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("operator record: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ParseError(std::string("operator record: ") + e.what());
  }
}

std::string describe(const LambdaOp& a) {
  if (a.isZero()) return "0 on " + describe(a.band());
  std::string out;
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    const auto& [k, c] = *it;
    if (!out.empty()) out += " + ";
    out += "(" + c.toString() + ")";
    if (k.second != 0) out += "*L^" + std::to_string(k.second);
    if (k.first == 1) out += "*log";
    if (k.first > 1) out += "*log^" + std::to_string(k.first);
  }
  return out + " on " + describe(a.band());
}

std::ostream& operator<<(std::ostream& os, const Band& b) { return os << describe(b); }
std::ostream& operator<<(std::ostream& os, const LambdaOp& a) { return os << describe(a); }

}  // namespace toda
