#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "json.hpp"
#include "toda/errors.hpp"
#include "toda/lambda_op.hpp"

namespace toda {

/// One nonzero coefficient of a residual that should have vanished.
struct ResidualEntry {
  std::string part;
  int logDeg = 0;
  int order = 0;
  int nuOrder = 0;
  std::string coefficient;

  friend bool operator==(const ResidualEntry&, const ResidualEntry&) = default;
};

/// A named sub-identity and the band on which it was checked.
struct CheckedPart {
  std::string name;
  Band band;
  int nuOrder = -1;  // -1: all ν-orders (exact in ν)

  friend bool operator==(const CheckedPart&, const CheckedPart&) = default;
};

struct ResidualReport {
  std::string name;
  std::vector<CheckedPart> parts;
  std::vector<ResidualEntry> residual;
  std::string error;  // module error that stopped the check, if any
  double seconds = 0;

  bool pass() const { return residual.empty() && error.empty(); }
  /// Lowest ν-order carrying a nonzero residual entry, or -1.
  int firstFailingNuOrder() const;

  /// Records A - B as one checked part, entry by entry in ν.
  void compare(const std::string& part, const LambdaOp& lhs, const LambdaOp& rhs);
  void addResidual(const std::string& part, const LambdaOp& r);
  /// Merges another report's parts and entries under a prefix.
  void absorb(const ResidualReport& other, const std::string& prefix = {});
};

struct IdentityFailed : Error {
  explicit IdentityFailed(ResidualReport r);
  ResidualReport report;
};

/// Throws IdentityFailed unless the report passed.
const ResidualReport& requirePass(const ResidualReport& r);

/// Refuses checks whose trusted band is narrower than `minWidth` orders.
void requireBandWidth(const Band& b, int minWidth, const std::string& what);

nlohmann::json toJson(const ResidualReport& r, bool withTiming = true);
ResidualReport residualReportFromJson(const nlohmann::json& j);
std::string describe(const ResidualReport& r);

/// Runs `body` on a fresh report, timing it and turning library errors into
/// the report's error field.
template <class F>
ResidualReport runCheck(const std::string& name, F&& body) {
  ResidualReport r;
  r.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const IdentityFailed& e) {
    r.absorb(e.report);
    if (r.pass()) r.error = e.what();
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace toda
