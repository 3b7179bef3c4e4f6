#include "toda/runner.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "toda/dressing.hpp"
#include "toda/errors.hpp"
#include "toda/factorization.hpp"
#include "toda/intertwiner.hpp"
#include "toda/reduction.hpp"

namespace toda {

const std::vector<std::string>& allChecks() {
  static const std::vector<std::string> names{"v",      "vbar",      "u",    "u0",       "u0ref", "u0flows", "factor",
                                              "reduction", "frakL", "sato", "extended", "bch",   "av"};
  return names;
}

// drop-v1 and drop-vbar1 remove the ν¹ part of V or V̄; undress replaces
// both by 1; perturb-w adds 1 below the diagonal of W after factorizing.
const std::vector<std::string>& allSabotages() {
  static const std::vector<std::string> names{"drop-v1", "drop-vbar1", "undress", "perturb-w"};
  return names;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::vector<std::string> splitOn(const std::string& text, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (seps.find(c) != std::string::npos) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Rational parseExact(const std::string& what, const std::string& text) {
  try {
    return parseRational(text);
  } catch (const std::exception& e) {
    throw UsageError(what + ": " + e.what());
  }
}

// Sample fields may arrive split at commas (config files) or whole; a new
// sample starts at every `nu=`.
std::vector<SamplePoint> parseSamples(const std::vector<std::string>& pieces) {
  std::string joined;
  for (const auto& p : pieces) joined += (joined.empty() ? "" : ",") + p;
  std::vector<std::vector<std::string>> groups;
  for (const auto& field : splitOn(joined, ",;")) {
    if (field.empty()) continue;
    if (field.rfind("nu=", 0) == 0 || groups.empty()) groups.emplace_back();
    groups.back().push_back(field);
  }
  std::vector<SamplePoint> out;
  for (const auto& g : groups) {
    std::string text;
    for (const auto& f : g) text += (text.empty() ? "" : ",") + f;
    out.push_back(parseSample(text));
  }
  return out;
}

}  // namespace

SamplePoint parseSample(const std::string& text) {
  std::map<std::string, Rational> fields;
  for (const auto& field : splitOn(text, ",")) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw UsageError("sample field '" + field + "' is not key=value");
    std::string key = field.substr(0, eq);
    if (key != "nu" && key != "Q" && key != "u") throw UsageError("unknown sample field '" + key + "'");
    if (!fields.emplace(key, parseExact("sample " + key, field.substr(eq + 1))).second) {
      throw UsageError("sample field '" + key + "' given twice");
    }
  }
  if (!fields.count("nu") || !fields.count("Q")) throw UsageError("sample '" + text + "' needs nu and Q");
  SamplePoint s{fields["nu"], fields["Q"], 0};
  if (s.q == 0) throw UsageError("sample Q must be nonzero");
  if (fields.count("u")) {
    s.u = fields["u"];
  } else {
    s.u = s.nu == 0 ? rational(1, 2) : Rational(1 / s.nu);
  }
  if (s.u == 0) throw UsageError("sample u must be nonzero");
  return s;
}

std::string toString(const SamplePoint& s) {
  return "nu=" + toString(s.nu) + ",Q=" + toString(s.q) + ",u=" + toString(s.u);
}

void addRunOptions(CLI::App& app, RunConfig& cfg, RawOptions& raw) {
  app.add_option("--a", cfg.a, "step of V");
  app.add_option("--b", cfg.b, "step of Vbar");
  app.add_option("--nu-order", cfg.nuOrder, "highest power of nu kept");
  app.add_option("--window", cfg.window, "orders kept in each truncated series");
  app.add_option("--lattice", cfg.latticeSize, "lattice half-width M (2M+1 points)");
  app.add_option("--sample", raw.samples, "nu=p/q,Q=p/q[,u=p/q]; repeatable");
  app.add_option("--u", raw.u, "u for bch/av in every sample");
  app.add_option("--checks", raw.checks, "comma-separated check names")->delimiter(',');
  app.add_option("--kmax", cfg.flowsMax, "u0flows: highest k");
  app.add_option("--extended-k", cfg.extendedK, "extended: values of k")->delimiter(',');
  app.add_option("--m", cfg.intertwinerM, "bch/av: values of m")->delimiter(',');
  app.add_option("--lattice-source", raw.latticeSource, "dressed|fixture");
  app.add_option("--sabotage", cfg.sabotage, "negative-control hook");
  app.add_option("--emit-format", raw.format, "json|text");
  app.add_option("--report", cfg.reportPath, "report file (default stdout)");
  app.add_option("--emit", cfg.emitPath, "dressing pair output file");
  app.set_config("--config", "", "key=value file with the same options");
}

void finishConfig(RunConfig& cfg, const RawOptions& raw) {
  if (!raw.latticeGiven) cfg.latticeSize = std::max(cfg.latticeSize, cfg.window);
  if (!raw.samples.empty()) cfg.samples = parseSamples(raw.samples);
  if (!raw.u.empty()) {
    Rational u = parseExact("u", raw.u);
    for (auto& s : cfg.samples) s.u = u;
  }
  if (raw.checksGiven || !raw.checks.empty()) {
    cfg.checks.clear();
    for (const auto& c : raw.checks) {
      if (!c.empty()) cfg.checks.push_back(c);
    }
  }
  if (raw.latticeSource == "dressed") {
    cfg.latticeSource = LatticeSource::Dressed;
  } else if (raw.latticeSource == "fixture") {
    cfg.latticeSource = LatticeSource::Fixture;
  } else {
    throw UsageError("unknown lattice source '" + raw.latticeSource + "'");
  }
  if (raw.format == "json") {
    cfg.format = EmitFormat::Json;
  } else if (raw.format == "text") {
    cfg.format = EmitFormat::Text;
  } else {
    throw UsageError("unknown emit format '" + raw.format + "'");
  }
  validate(cfg);
}

void validate(const RunConfig& cfg) {
  auto need = [](bool ok, const std::string& why) {
    if (!ok) throw UsageError(why);
  };
  need(cfg.a > 0 && cfg.b > 0, "a and b must be positive");
  need(cfg.nuOrder >= 0, "nu-order must be nonnegative");
  need(cfg.window >= cfg.nuOrder * cfg.a, "window N must be at least K*a");
  need(cfg.window >= cfg.nuOrder * cfg.b, "window N must be at least K*b");
  need(cfg.latticeSize >= cfg.window, "lattice size M must be at least N");
  need(cfg.flowsMax >= 1, "kmax must be positive");
  for (int k : cfg.extendedK) need(k >= 1, "extended-k values must be positive");
  for (int m : cfg.intertwinerM) need(m >= 1, "m values must be positive");
  need(!cfg.samples.empty(), "at least one sample is needed");
  std::set<std::string> seen;
  for (const auto& c : cfg.checks) {
    need(std::find(allChecks().begin(), allChecks().end(), c) != allChecks().end(), "unknown check '" + c + "'");
    need(seen.insert(c).second, "check '" + c + "' listed twice");
  }
  need(cfg.sabotage.empty() ||
           std::find(allSabotages().begin(), allSabotages().end(), cfg.sabotage) != allSabotages().end(),
       "unknown sabotage '" + cfg.sabotage + "'");
}

RunConfig parseConfig(const std::vector<std::string>& args) {
  CLI::App app("toda run");
  RunConfig cfg;
  cfg.checks = allChecks();
  RawOptions raw;
  addRunOptions(app, cfg, raw);
  auto* checksOpt = app.get_option("--checks");
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  raw.checksGiven = checksOpt->count() > 0;
  raw.latticeGiven = app.get_option("--lattice")->count() > 0;
  finishConfig(cfg, raw);
  return cfg;
}

// ---------------------------------------------------------------------------
// Running

namespace {

struct Lattice {
  LatticeMatrix u;
  FactorizationResult f;
};

// Lattice section and factors for one sample; errors surface when a check
// asks for them.
Lattice makeLattice(const RunConfig& cfg, const LatticeSample& smp, const DressingPair* pair) {
  Lattice out;
  if (cfg.latticeSource == LatticeSource::Dressed) {
    StrippedU su = smp.nu == 0 ? assembleU0(cfg.a, cfg.b, cfg.window) : assembleU(*pair);
    out.u = toLattice(su.core(), cfg.latticeSize, smp);
  } else if (smp.nu == 0) {
    out.u = hankelFixture(cfg.a, cfg.b, cfg.latticeSize, smp.q);
  } else {
    out.u = equivariantFixture(cfg.a, cfg.b, cfg.latticeSize, smp);
  }
  out.f = gaussFactorize(out.u);
  if (cfg.sabotage == "perturb-w") {
    int n = out.f.size();
    LatticeMatrix w = out.f.w;
    w(n / 2, n / 2 - 1) += RatFunc(1);
    out.f = FactorizationResult::fromFactors(w, out.f.wbarPrime, out.f.interiorMargin);
  }
  return out;
}

using LatticeFuture = std::shared_future<Lattice>;

}  // namespace

RunReport runAll(const RunConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.config = cfg;
  auto wants = [&](const std::string& c) { return std::find(cfg.checks.begin(), cfg.checks.end(), c) != cfg.checks.end(); };

  // Shared inputs, built once. V and V̄ are sequential in the ν-order.
  static const std::vector<std::string> needsPair{"v", "vbar", "u", "factor", "reduction", "frakL", "sato"};
  static const std::vector<std::string> needsU0{"u0", "u0ref", "u0flows"};
  auto pairJob = std::async(std::launch::async, [&] {
    DressingPair p;
    if (std::none_of(needsPair.begin(), needsPair.end(), wants)) return p;
    p = buildDressingPair(cfg.a, cfg.b, cfg.nuOrder, cfg.window);
    if (cfg.sabotage == "drop-v1") p.v = dropNuComponent(p.v, 1);
    if (cfg.sabotage == "drop-vbar1") p.vbar = dropNuComponent(p.vbar, 1);
    if (cfg.sabotage == "undress") p.v = p.vbar = LambdaOp::identity();
    return p;
  });
  auto u0Job = std::async(std::launch::async, [&] {
    StrippedU u0;
    if (std::none_of(needsU0.begin(), needsU0.end(), wants)) return u0;
    if (cfg.sabotage == "undress") return assembleU(LambdaOp::identity(), LambdaOp::identity(), cfg.a, cfg.b, cfg.window);
    return assembleU0(cfg.a, cfg.b, cfg.window);
  });
  const DressingPair pair = pairJob.get();
  const StrippedU u0 = u0Job.get();

  std::vector<LatticeFuture> lattices;
  std::vector<LatticeFuture> lattices0;  // ν = 0 at each sample's Q, for extended
  bool anyLattice = std::any_of(needsPair.begin() + 3, needsPair.end(), wants);
  for (const auto& s : cfg.samples) {
    LatticeSample smp{s.nu, s.q};
    if (anyLattice) lattices.push_back(std::async(std::launch::async, makeLattice, std::cref(cfg), smp, &pair).share());
    if (wants("extended")) {
      lattices0.push_back(
          std::async(std::launch::async, makeLattice, std::cref(cfg), LatticeSample{0, s.q}, &pair).share());
    }
  }

  using Body = std::function<void(ResidualReport&)>;
  std::vector<std::pair<std::string, Body>> jobs;
  auto perSample = [&](const std::string& name, std::vector<LatticeFuture>& source,
                       std::function<ResidualReport(const Lattice&, const SamplePoint&)> check) {
    jobs.emplace_back(name, [&cfg, &source, name, check](ResidualReport& r) {
      std::vector<std::future<ResidualReport>> each;
      for (std::size_t i = 0; i < cfg.samples.size(); ++i) {
        each.push_back(std::async(std::launch::async, [&, i] {
          return runCheck(name, [&](ResidualReport& inner) { inner.absorb(check(source[i].get(), cfg.samples[i])); });
        }));
      }
      for (std::size_t i = 0; i < cfg.samples.size(); ++i) {
        ResidualReport one = each[i].get();
        const std::string label = "[" + toString(cfg.samples[i]) + "]";
        std::string errors = r.error;
        r.absorb(one, label);
        if (!one.error.empty()) errors += (errors.empty() ? "" : "; ") + label + " " + one.error;
        r.error = errors;
      }
    });
  };

  if (wants("v")) jobs.emplace_back("v", [&](ResidualReport& r) { r.absorb(verifyVRel(pair.v, cfg.a, cfg.nuOrder)); });
  if (wants("vbar")) {
    jobs.emplace_back("vbar", [&](ResidualReport& r) { r.absorb(verifyVbarRel(pair.vbar, cfg.b, cfg.nuOrder)); });
  }
  if (wants("u")) {
    jobs.emplace_back("u", [&](ResidualReport& r) {
      r.absorb(verifyUIntertwine(assembleU(pair.v, pair.vbar, cfg.a, cfg.b, cfg.window), cfg.nuOrder));
    });
  }
  if (wants("u0")) jobs.emplace_back("u0", [&](ResidualReport& r) { r.absorb(verifyU0Commute(u0)); });
  if (wants("u0ref")) jobs.emplace_back("u0ref", [&](ResidualReport& r) { r.absorb(verifyU0Refinement(u0)); });
  if (wants("u0flows")) {
    jobs.emplace_back("u0flows", [&](ResidualReport& r) { r.absorb(verifyU0Flows(u0, cfg.flowsMax)); });
  }
  auto latticeSample = [](const SamplePoint& s) { return LatticeSample{s.nu, s.q}; };
  if (wants("factor")) {
    perSample("factor", lattices, [](const Lattice& l, const SamplePoint&) { return verifyFactorization(l.u, l.f); });
  }
  if (wants("reduction")) {
    perSample("reduction", lattices, [&cfg, latticeSample](const Lattice& l, const SamplePoint& s) {
      return verifyReduction(l.f, cfg.a, cfg.b, latticeSample(s));
    });
  }
  if (wants("frakL")) {
    perSample("frakL", lattices, [&cfg, latticeSample](const Lattice& l, const SamplePoint& s) {
      return reducedLaxOperator(l.f, cfg.a, cfg.b, latticeSample(s)).report;
    });
  }
  if (wants("sato")) {
    perSample("sato", lattices, [latticeSample](const Lattice& l, const SamplePoint& s) {
      return verifySato(l.u, l.f, latticeSample(s));
    });
  }
  if (wants("extended")) {
    perSample("extended", lattices0, [&cfg](const Lattice& l, const SamplePoint& s) {
      ResidualReport all;
      all.name = "extended";
      for (int k : cfg.extendedK) {
        all.absorb(verifyExtendedSato(l.u, l.f, cfg.a, cfg.b, k, {0, s.q}), "k=" + std::to_string(k));
      }
      return all;
    });
  }
  auto intertwinerV = [&](int window) {
    return LambdaOp::identity().clip(-window, 0);
  };
  if (wants("bch")) {
    jobs.emplace_back("bch", [&, intertwinerV](ResidualReport& r) {
      for (const auto& s : cfg.samples) {
        for (int m : cfg.intertwinerM) {
          ResidualReport one = cfg.sabotage == "undress" ? verifyBCH(m, s.u, cfg.window, intertwinerV(cfg.window))
                                                         : verifyBCH(m, s.u, cfg.window);
          r.absorb(one, "[m=" + std::to_string(m) + ",u=" + toString(s.u) + "]");
        }
      }
    });
  }
  if (wants("av")) {
    jobs.emplace_back("av", [&, intertwinerV](ResidualReport& r) {
      for (const auto& s : cfg.samples) {
        for (int m : cfg.intertwinerM) {
          ResidualReport one = cfg.sabotage == "undress"
                                   ? verifyAV(m, s.u, cfg.window, intertwinerV(cfg.window), buildA(m, s.u, cfg.window))
                                   : verifyAV(m, s.u, cfg.window);
          r.absorb(one, "[m=" + std::to_string(m) + ",u=" + toString(s.u) + "]");
        }
      }
    });
  }

  std::vector<std::future<ResidualReport>> running;
  for (auto& [name, body] : jobs) {
    running.push_back(std::async(std::launch::async, [&name, &body] { return runCheck(name, body); }));
  }
  for (auto& f : running) report.checks.push_back(f.get());
  std::sort(report.checks.begin(), report.checks.end(),
            [](const ResidualReport& x, const ResidualReport& y) { return x.name < y.name; });
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

bool RunReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ResidualReport& r) { return r.pass(); });
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json toJson(const RunConfig& cfg) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : cfg.samples) {
    samples.push_back({{"nu", toString(s.nu)}, {"Q", toString(s.q)}, {"u", toString(s.u)}});
  }
  return {{"a", cfg.a},
          {"b", cfg.b},
          {"nuOrder", cfg.nuOrder},
          {"window", cfg.window},
          {"latticeSize", cfg.latticeSize},
          {"kmax", cfg.flowsMax},
          {"extendedK", cfg.extendedK},
          {"m", cfg.intertwinerM},
          {"samples", samples},
          {"checks", cfg.checks},
          {"latticeSource", cfg.latticeSource == LatticeSource::Dressed ? "dressed" : "fixture"},
          {"sabotage", cfg.sabotage}};
}

namespace {

RunConfig runConfigFromJson(const nlohmann::json& j) {
  RunConfig cfg;
  cfg.a = j.at("a");
  cfg.b = j.at("b");
  cfg.nuOrder = j.at("nuOrder");
  cfg.window = j.at("window");
  cfg.latticeSize = j.at("latticeSize");
  cfg.flowsMax = j.at("kmax");
  cfg.extendedK = j.at("extendedK").get<std::vector<int>>();
  cfg.intertwinerM = j.at("m").get<std::vector<int>>();
  cfg.samples.clear();
  for (const auto& s : j.at("samples")) {
    cfg.samples.push_back({parseRational(s.at("nu").get<std::string>()), parseRational(s.at("Q").get<std::string>()),
                           parseRational(s.at("u").get<std::string>())});
  }
  cfg.checks = j.at("checks").get<std::vector<std::string>>();
  cfg.latticeSource = j.at("latticeSource") == "dressed" ? LatticeSource::Dressed : LatticeSource::Fixture;
  cfg.sabotage = j.at("sabotage");
  return cfg;
}

}  // namespace

nlohmann::json toJson(const RunReport& r, bool withTiming) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(toJson(c, withTiming));
  nlohmann::json j{{"config", toJson(r.config)}, {"checks", checks}, {"pass", r.pass()}};
  if (withTiming) j["seconds"] = r.seconds;
  return j;
}

RunReport runReportFromJson(const nlohmann::json& j) {
  RunReport r;
  r.config = runConfigFromJson(j.at("config"));
  for (const auto& c : j.at("checks")) r.checks.push_back(residualReportFromJson(c));
  r.seconds = j.value("seconds", 0.0);
  return r;
}

std::string describe(const RunReport& r) {
  std::ostringstream out;
  const auto& c = r.config;
  out << "a=" << c.a << " b=" << c.b << " K=" << c.nuOrder << " N=" << c.window << " M=" << c.latticeSize;
  if (!c.sabotage.empty()) out << " sabotage=" << c.sabotage;
  out << "\n";
  for (const auto& check : r.checks) {
    std::string text = describe(check);
    out << text << (text.empty() || text.back() != '\n' ? "\n" : "");
  }
  out << (r.pass() ? "PASS" : "FAIL") << " (" << r.seconds << " s)\n";
  return out.str();
}

std::string render(const RunReport& r, EmitFormat format, bool withTiming) {
  if (format == EmitFormat::Text) return describe(r);
  return toJson(r, withTiming).dump(2) + "\n";
}

}  // namespace toda
