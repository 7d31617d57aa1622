#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pdm/cli/audit.hpp"
#include "pdm/cli/report.hpp"
#include "pdm/cli/runner.hpp"
#include "pdm/cli/scenario.hpp"
#include "pdm/errors.hpp"

using namespace pdm;
using namespace pdm::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "pdm_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes `doc` to a file and runs the real executable on it; returns the exit code.
int run_tool(const json& doc, const std::string& tag) {
  const fs::path dir = scratch();
  const fs::path file = dir / (tag + ".json.in");
  std::ofstream(file) << doc.dump(2);
  const std::string cmd = std::string(PDM_SPECTRA) + " --quiet " + file.string() + " --out " +
                          (dir / tag).string() + " 2>" + (dir / (tag + ".err")).string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json base() { return to_json(default_scenario()); }

} // namespace

TEST_CASE("scenario JSON round-trips") {
  Scenario s = default_scenario();
  s.command = Command::sweep;
  s.ordering = {std::nullopt, 0.3, -0.2, 0.7};
  s.problem.kind = ProblemKind::example2;
  s.problem.ex2.B = -3.0;
  s.domain = Interval{0.01, 9.0};
  s.sweep.include_catalog = true;
  s.sweep.a = {-0.5, 2.0, 3};
  CHECK(parse_scenario(to_json(s)) == s);
  CHECK(parse_scenario(base()) == default_scenario());
}

TEST_CASE("schema errors name the problem and the alternatives") {
  json doc = base();
  doc["ordering"] = "weil";
  try {
    (void)parse_scenario(doc);
    FAIL("accepted a misspelled ordering");
  } catch (const SchemaError& e) {
    const std::string what = e.what();
    CHECK(what.find("weil") != std::string::npos);
    CHECK(what.find("weyl") != std::string::npos);
  }
  json extra = base();
  extra["grids"] = 3;
  CHECK_THROWS_AS((void)parse_scenario(extra), SchemaError);
  json wrong = base();
  wrong["schema"] = "pdm-spectra/0";
  CHECK_THROWS_AS((void)parse_scenario(wrong), SchemaError);
  json bad_k = base();
  bad_k["k"] = 200;
  CHECK_THROWS_AS((void)parse_scenario(bad_k), SchemaError);
  json singular = base();
  singular["ordering"] = {{"a", -1.0}, {"alpha", 0.0}, {"gamma", 0.0}};
  CHECK_THROWS_AS((void)parse_scenario(singular), SchemaError);
  json custom = base();
  custom["problem"] = {{"kind", "custom"},
                       {"mass", {{"kind", "const"}, {"value", 1.0}}},
                       {"potential", {{"kind", "power"}, {"exponent", 2.0}}}};
  CHECK_THROWS_AS((void)parse_scenario(custom), SchemaError);
}

TEST_CASE("profiles build from JSON trees") {
  const SmoothFn f = build_profile(json{{"kind", "sum"},
                                        {"terms",
                                         {{{"kind", "scale"}, {"factor", 0.5}, {"of", {{"kind", "power"}, {"exponent", 2.0}}}},
                                          {{"kind", "gaussian"}, {"amplitude", 2.0}, {"center", 0.0}, {"width", 1.0}}}}});
  CHECK(f(1.0) == doctest::Approx(0.5 + 2.0 * std::exp(-1.0)));
  CHECK_THROWS_AS(build_profile(json{{"kind", "sinc"}}), SchemaError);
}

TEST_CASE("format and hash helpers") {
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(fnv1a64("") == "cbf29ce484222325");
  CHECK(fnv1a64("a") == "af63dc4c8601ec8c");
  CsvTable t{{"a", "b"}, {{"1", "x,y"}}};
  CHECK(t.render() == "a,b\n1,\"x,y\"\n");
}

TEST_CASE("custom problem: oscillator from profile trees") {
  json doc = base();
  doc["problem"] = {{"kind", "custom"},
                    {"mass", {{"kind", "const"}, {"value", 1.0}}},
                    {"potential", {{"kind", "scale"}, {"factor", 0.5}, {"of", {{"kind", "power"}, {"exponent", 2.0}}}}}};
  doc["domain"] = {-10.0, 10.0};
  const CommandResult r = execute(parse_scenario(doc));
  CHECK(r.exit_code == kOk);
  for (int n = 0; n < 5; ++n) CHECK(std::stod(r.csv.rows[n][1]) == doctest::Approx(n + 0.5).epsilon(1e-7));
}

TEST_CASE("runs are byte-for-byte reproducible") {
  json doc = base();
  doc["command"] = "audit";
  REQUIRE(run_tool(doc, "repro_a") == 0);
  REQUIRE(run_tool(doc, "repro_b") == 0);
  const fs::path dir = scratch();
  CHECK(slurp(dir / "repro_a.csv") == slurp(dir / "repro_b.csv"));
  CHECK(slurp(dir / "repro_a.json") == slurp(dir / "repro_b.json"));
  const json report = json::parse(slurp(dir / "repro_a.json"));
  CHECK(report["schema"] == std::string(kSchema));
  CHECK(report["scenario_hash"] == "fnv1a64:" + fnv1a64(to_json(parse_scenario(doc)).dump()));
}

TEST_CASE("exit codes") {
  json typo = base();
  typo["ordering"] = "weil";
  CHECK(run_tool(typo, "typo") == kSchemaError);
  CHECK(slurp(scratch() / "typo.err").find("weyl") != std::string::npos);

  json missing = base();
  missing["command"] = "spectra";
  CHECK(run_tool(missing, "cmd") == kSchemaError);

  json slow = base();
  slow["command"] = "convergence";
  slow["ordering"] = "gora-williams";
  slow["problem"] = {{"kind", "example2"}};
  CHECK(run_tool(slow, "slow") == kSolverFailure);

  json ok = base();
  ok["command"] = "identities";
  CHECK(run_tool(ok, "identities") == kOk);
  const std::string csv = slurp(scratch() / "identities.csv");
  CHECK(csv.find(",false") == std::string::npos);

  const std::string cmd = std::string(PDM_SPECTRA) + " " + (scratch() / "nope.json").string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == kSchemaError);
}

TEST_CASE("audit reports every discrepancy code with a definite status") {
  const CommandResult r = execute([] {
    Scenario s = default_scenario();
    s.command = Command::audit;
    return s;
  }());
  const json& d = r.report["discrepancies"];
  REQUIRE(d.size() == discrepancy_codes().size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i]["code"] == discrepancy_codes()[i]);
    CHECK(d[i]["status"] != "inconclusive");
  }
  // Derived levels agree with the solver, printed ones do not.
  for (const auto& row : r.csv.rows) {
    CHECK(row[7] == "false");
    CHECK(row[8] == "true");
  }
}

TEST_CASE("sweep rows: complex shifts coincide with unbounded numerics") {
  Scenario s = default_scenario();
  s.command = Command::sweep;
  s.sweep.a = {-0.5, 1.5, 3};
  s.sweep.alpha = {-1.0, 1.0, 3};
  s.sweep.gamma = {-1.0, 1.0, 3};
  s.sweep.include_catalog = true;
  s.sweep.numeric = true;
  const CommandResult r = execute(s);
  CHECK(r.csv.rows.size() == 27 + 5);
  int forbidden = 0;
  for (const auto& row : r.csv.rows) {
    REQUIRE(row.size() == r.csv.header.size());
    const bool complex_nu = row[14] == "forbidden-complex";
    forbidden += complex_nu;
    CHECK(complex_nu == (row.back() == "unbounded-below"));
  }
  CHECK(forbidden > 0);
}
