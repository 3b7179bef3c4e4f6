#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "toda/runner.hpp"

using namespace toda;

namespace {

const ResidualReport& find(const RunReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range(name);
}

RunConfig small(std::vector<std::string> checks) {
  RunConfig cfg;
  cfg.nuOrder = 1;
  cfg.window = 4;
  cfg.latticeSize = 4;
  cfg.intertwinerM = {1};
  cfg.extendedK = {1};
  cfg.checks = std::move(checks);
  return cfg;
}

}  // namespace

TEST_CASE("flags parse into the configuration") {
  RunConfig c = parseConfig({"--a", "2", "--b", "3", "--nu-order", "1", "--window", "12"});
  CHECK(c.a == 2);
  CHECK(c.b == 3);
  CHECK(c.nuOrder == 1);
  CHECK(c.window == 12);
  CHECK(c.latticeSize == 12);
  CHECK(c.checks == allChecks());

  RunConfig s = parseConfig({"--sample", "nu=1/3,Q=2"});
  REQUIRE(s.samples.size() == 1);
  CHECK(s.samples[0].nu == rational(1, 3));
  CHECK(s.samples[0].q == Rational(2));
  CHECK(s.samples[0].u == Rational(3));

  RunConfig two = parseConfig({"--sample", "nu=0,Q=3", "--sample", "nu=2/5,Q=-1/2,u=7", "--u", "1/3"});
  REQUIRE(two.samples.size() == 2);
  CHECK(two.samples[1].q == rational(-1, 2));
  CHECK(two.samples[0].u == rational(1, 3));
  CHECK(two.samples[1].u == rational(1, 3));
  CHECK(parseSample("nu=0,Q=3").u == rational(1, 2));

  CHECK(parseConfig({"--checks", "v,bch"}).checks == std::vector<std::string>{"v", "bch"});
  CHECK(parseConfig({"--checks", ""}).checks.empty());
}

TEST_CASE("bad usage is rejected") {
  CHECK_THROWS_AS(parseConfig({"--window", "2", "--nu-order", "3", "--a", "1"}), UsageError);
  CHECK_THROWS_AS(parseConfig({"--window", "8", "--nu-order", "3", "--b", "3"}), UsageError);
  CHECK_THROWS_AS(parseConfig({"--window", "10", "--lattice", "8"}), UsageError);
  CHECK_THROWS_AS(parseConfig({"--frobnicate"}), UsageError);
  CHECK_THROWS_AS(parseConfig({"--checks", "v,nope"}), UsageError);
  CHECK_THROWS_AS(parseConfig({"--sample", "nu=1/3"}), UsageError);
  CHECK_THROWS_AS(parseConfig({"--sample", "nu=1/3,Q=0.5"}), UsageError);
  CHECK_THROWS_AS(parseConfig({"--sample", "nu=1/3,Q=2,r=1"}), UsageError);
  CHECK_THROWS_AS(parseConfig({"--sabotage", "everything"}), UsageError);
  CHECK_THROWS_AS(parseConfig({"--lattice-source", "moon"}), UsageError);
  CHECK_THROWS_AS(parseConfig({"--a", "x"}), UsageError);
}

TEST_CASE("a key=value file sets the same options") {
  const std::string path = "test_runner_config.cfg";
  {
    std::ofstream out(path);
    out << "# suite\na = 2\nb = 1\nwindow = 10\nsample = nu=2/5,Q=3\nchecks = v,vbar\n";
  }
  RunConfig c = parseConfig({"--config", path, "--nu-order", "1"});
  std::remove(path.c_str());
  CHECK(c.a == 2);
  CHECK(c.b == 1);
  CHECK(c.nuOrder == 1);
  CHECK(c.window == 10);
  REQUIRE(c.samples.size() == 1);
  CHECK(c.samples[0].nu == rational(2, 5));
  CHECK(c.samples[0].q == Rational(3));
  CHECK(c.checks == std::vector<std::string>{"v", "vbar"});
}

TEST_CASE("an empty check list passes with an empty report") {
  RunReport r = runAll(RunConfig{});
  CHECK(r.checks.empty());
  CHECK(r.pass());
  CHECK(r.exitCode() == 0);
}

TEST_CASE("operator checks pass and are sorted by name") {
  RunReport r = runAll(small({"vbar", "v", "u", "u0", "u0ref", "u0flows", "bch", "av"}));
  CHECK(r.pass());
  std::vector<std::string> names;
  for (const auto& c : r.checks) names.push_back(c.name);
  CHECK(names == std::vector<std::string>{"av", "bch", "u", "u0", "u0flows", "u0ref", "v", "vbar"});
}

TEST_CASE("the dressed lattice section is reported as an error, not a crash") {
  RunReport r = runAll(small({"factor", "reduction", "frakL", "sato", "extended"}));
  CHECK_FALSE(r.pass());
  CHECK(r.exitCode() == 1);
  for (const auto& c : r.checks) {
    CHECK(c.residual.empty());
    CHECK(c.error.find("trusts no order") != std::string::npos);
  }
}

TEST_CASE("lattice checks pass on fixtures") {
  RunConfig cfg = small({"factor", "reduction", "frakL", "sato", "extended"});
  cfg.window = cfg.latticeSize = 3;
  cfg.latticeSource = LatticeSource::Fixture;
  cfg.samples.push_back({0, Rational(3), rational(1, 2)});
  RunReport r = runAll(cfg);
  for (const auto& c : r.checks) {
    CAPTURE(c.name);
    CHECK(c.pass());
    CHECK_FALSE(c.parts.empty());
  }
}

TEST_CASE("every check has a sabotage that breaks it") {
  SUBCASE("drop-v1 fails at nu^1") {
    RunConfig cfg = small({"v", "vbar", "u"});
    cfg.sabotage = "drop-v1";
    RunReport r = runAll(cfg);
    CHECK(find(r, "v").firstFailingNuOrder() == 1);
    CHECK(find(r, "u").firstFailingNuOrder() == 1);
    CHECK(find(r, "vbar").pass());
    CHECK(r.exitCode() == 1);
  }
  SUBCASE("drop-vbar1") {
    RunConfig cfg = small({"v", "vbar", "u"});
    cfg.sabotage = "drop-vbar1";
    RunReport r = runAll(cfg);
    CHECK(find(r, "v").pass());
    CHECK(find(r, "vbar").firstFailingNuOrder() == 1);
    CHECK(find(r, "u").firstFailingNuOrder() == 1);
  }
  SUBCASE("undress") {
    RunConfig cfg = small({"u", "u0", "u0ref", "u0flows", "bch", "av"});
    cfg.sabotage = "undress";
    for (const auto& c : runAll(cfg).checks) {
      CAPTURE(c.name);
      CHECK_FALSE(c.residual.empty());
    }
  }
  SUBCASE("perturb-w") {
    RunConfig cfg = small({"factor", "reduction", "frakL", "sato", "extended"});
    cfg.window = cfg.latticeSize = 3;
    cfg.latticeSource = LatticeSource::Fixture;
    cfg.sabotage = "perturb-w";
    for (const auto& c : runAll(cfg).checks) {
      CAPTURE(c.name);
      CHECK_FALSE(c.residual.empty());
    }
  }
}

TEST_CASE("reports are deterministic and round-trip") {
  RunConfig cfg = small({"v", "u", "u0", "bch", "factor"});
  cfg.samples.push_back({rational(2, 5), Rational(3), rational(1, 3)});
  cfg.sabotage = "drop-v1";
  RunReport first = runAll(cfg);
  RunReport second = runAll(cfg);
  CHECK(toJson(first, false).dump() == toJson(second, false).dump());

  RunReport back = runReportFromJson(toJson(first));
  CHECK(back.config == first.config);
  CHECK(toJson(back).dump() == toJson(first).dump());
  CHECK(render(first, EmitFormat::Text).find("FAIL") != std::string::npos);
}
