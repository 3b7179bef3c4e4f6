#include "toda/residual.hpp"

#include <algorithm>

namespace toda {

int ResidualReport::firstFailingNuOrder() const {
  int best = -1;
  for (const auto& e : residual) {
    if (best < 0 || e.nuOrder < best) best = e.nuOrder;
  }
  return best;
}

void ResidualReport::addResidual(const std::string& part, const LambdaOp& r) {
  parts.push_back({part, r.band(), r.nuCap()});
  for (const auto& [k, c] : r.terms()) {
    for (int j = 0; j <= std::max(c.nuDegree(), 0); ++j) {
      PolyCoeff cj = nuComponent(c, j);
      if (!cj.isZero()) residual.push_back({part, k.first, k.second, j, cj.toString()});
    }
  }
}

void ResidualReport::compare(const std::string& part, const LambdaOp& lhs, const LambdaOp& rhs) {
  addResidual(part, lhs - rhs);
}

void ResidualReport::absorb(const ResidualReport& other, const std::string& prefix) {
  auto label = [&](const std::string& n) { return prefix.empty() ? n : prefix + "/" + n; };
  for (auto p : other.parts) {
    p.name = label(p.name);
    parts.push_back(std::move(p));
  }
  for (auto e : other.residual) {
    e.part = label(e.part);
    residual.push_back(std::move(e));
  }
  if (error.empty() && !other.error.empty()) error = label(other.name) + ": " + other.error;
}

IdentityFailed::IdentityFailed(ResidualReport r)
    : Error("identity '" + r.name + "' failed: " +
            (r.residual.empty() ? r.error
                                : "first residual at " + r.residual.front().part + ", order " +
                                      std::to_string(r.residual.front().order) + ", ν^" +
                                      std::to_string(r.residual.front().nuOrder) + ": " +
                                      r.residual.front().coefficient)),
      report(std::move(r)) {}

const ResidualReport& requirePass(const ResidualReport& r) {
  if (!r.pass()) throw IdentityFailed(r);
  return r;
}

void requireBandWidth(const Band& b, int minWidth, const std::string& what) {
  if (b.empty() || b.width() < minWidth) {
    throw BandTooNarrow(what + ": trusted band " + describe(b) + " is narrower than " + std::to_string(minWidth) +
                        " orders");
  }
}

namespace {

nlohmann::json bandJson(const Band& b) {
  return {{"low", b.low}, {"high", b.high}, {"boundedAbove", b.boundedAbove}, {"boundedBelow", b.boundedBelow}};
}

Band bandFromJson(const nlohmann::json& j) {
  return Band{j.at("low").get<int>(), j.at("high").get<int>(), j.at("boundedAbove").get<bool>(),
              j.at("boundedBelow").get<bool>()};
}

}  // namespace

nlohmann::json toJson(const ResidualReport& r, bool withTiming) {
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& p : r.parts) parts.push_back({{"name", p.name}, {"band", bandJson(p.band)}, {"nuOrder", p.nuOrder}});
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.residual) {
    entries.push_back({{"part", e.part},
                       {"logDeg", e.logDeg},
                       {"order", e.order},
                       {"nuOrder", e.nuOrder},
                       {"coefficient", e.coefficient}});
  }
  nlohmann::json out = {{"name", r.name}, {"pass", r.pass()}, {"parts", parts}, {"residual", entries}};
  if (!r.error.empty()) out["error"] = r.error;
  if (withTiming) out["seconds"] = r.seconds;
  return out;
}

ResidualReport residualReportFromJson(const nlohmann::json& j) {
  try {
    ResidualReport r;
    r.name = j.at("name").get<std::string>();
    for (const auto& p : j.at("parts")) {
      r.parts.push_back({p.at("name").get<std::string>(), bandFromJson(p.at("band")), p.at("nuOrder").get<int>()});
    }
    for (const auto& e : j.at("residual")) {
      r.residual.push_back({e.at("part").get<std::string>(), e.at("logDeg").get<int>(), e.at("order").get<int>(),
                            e.at("nuOrder").get<int>(), e.at("coefficient").get<std::string>()});
    }
    r.error = j.value("error", std::string());
    r.seconds = j.value("seconds", 0.0);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("residual report: ") + e.what());
  }
}

std::string describe(const ResidualReport& r) {
  std::string out = r.name + ": " + (r.pass() ? "pass" : "FAIL");
  for (const auto& p : r.parts) {
    out += "\n  " + p.name + " on " + describe(p.band) +
           (p.nuOrder >= 0 ? " through nu^" + std::to_string(p.nuOrder) : std::string());
  }
  const std::size_t shown = std::min<std::size_t>(r.residual.size(), 8);
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& e = r.residual[i];
    out += "\n  residual " + e.part + " L^" + std::to_string(e.order) + (e.logDeg ? " log" : "") + " nu^" +
           std::to_string(e.nuOrder) + ": " + e.coefficient;
  }
  if (r.residual.size() > shown) out += "\n  ... " + std::to_string(r.residual.size() - shown) + " more";
  if (!r.error.empty()) out += "\n  error: " + r.error;
  return out;
}

}  // namespace toda
