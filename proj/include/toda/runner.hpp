#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "toda/rational.hpp"
#include "toda/residual.hpp"

namespace CLI {
class App;
}

namespace toda {

struct SamplePoint {
  Rational nu;
  Rational q;
  Rational u;

  friend bool operator==(const SamplePoint&, const SamplePoint&) = default;
};

/// Where the factorization checks get their lattice matrix from.
enum class LatticeSource {
  Dressed,  // the section of the core of U assembled from V and Vbar
  Fixture,  // exact finite-lattice cores with the same intertwining
};

enum class EmitFormat { Json, Text };

struct RunConfig {
  int a = 1;
  int b = 1;
  int nuOrder = 2;
  int window = 8;
  int latticeSize = 8;
  int flowsMax = 3;                 // u0flows: k = 1..flowsMax
  std::vector<int> extendedK{1, 2};  // extended: these k
  std::vector<int> intertwinerM{1, 2};
  std::vector<SamplePoint> samples{{rational(1, 3), Rational(2), Rational(3)}};
  std::vector<std::string> checks;
  LatticeSource latticeSource = LatticeSource::Dressed;
  std::string sabotage;
  EmitFormat format = EmitFormat::Json;
  std::string reportPath;
  std::string emitPath;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Every check name the runner knows, in report order.
const std::vector<std::string>& allChecks();
/// Sabotage hooks; each breaks at least one check.
const std::vector<std::string>& allSabotages();

/// `nu=1/3,Q=2[,u=1/2]`; u defaults to 1/ν (or 1/2 at ν = 0).
SamplePoint parseSample(const std::string& text);
std::string toString(const SamplePoint& s);

/// Flag text that needs converting after CLI parsing.
struct RawOptions {
  std::vector<std::string> samples;
  std::vector<std::string> checks;
  std::string u;
  std::string latticeSource = "dressed";
  std::string format = "json";
  bool checksGiven = false;
  bool latticeGiven = false;
};

/// Registers the run flags on `app`, writing into `cfg` and `raw`. The
/// command-line tool shares these between its subcommands.
void addRunOptions(CLI::App& app, RunConfig& cfg, RawOptions& raw);
/// Converts the raw flag text and validates. Without an explicit lattice
/// size M follows the window when that is larger. Throws UsageError.
void finishConfig(RunConfig& cfg, const RawOptions& raw);
void validate(const RunConfig& cfg);

/// Parses flags (argv without the program name) and an optional
/// `--config <file>` of key=value lines. Throws UsageError.
RunConfig parseConfig(const std::vector<std::string>& args);

nlohmann::json toJson(const RunConfig& cfg);

struct RunReport {
  RunConfig config;
  std::vector<ResidualReport> checks;  // sorted by name
  double seconds = 0;

  bool pass() const;
  int exitCode() const { return pass() ? 0 : 1; }
};

/// Runs the configured checks concurrently; the report does not depend on
/// scheduling.
RunReport runAll(const RunConfig& cfg);

nlohmann::json toJson(const RunReport& r, bool withTiming = true);
RunReport runReportFromJson(const nlohmann::json& j);
std::string describe(const RunReport& r);
/// Serializes in the configured format.
std::string render(const RunReport& r, EmitFormat format, bool withTiming = true);

}  // namespace toda
