#pragma once

#include <filesystem>
#include <iosfwd>

#include <json.hpp>

#include "pdm/cli/report.hpp"
#include "pdm/cli/scenario.hpp"

namespace pdm::cli {

enum ExitCode : int {
  kOk = 0,
  kSchemaError = 2,
  kSolverFailure = 3,
  kIdentityFailure = 4,
};

/// What a command produced, before anything is written.
struct CommandResult {
  CsvTable csv;
  nlohmann::json report;
  int exit_code = kOk;
};

/// Runs the scenario's command. Solver and parameter errors propagate as
/// pdm::Error subclasses; identity-threshold failures set exit_code = 4.
CommandResult execute(const Scenario& s);

/// Header shared by every report: tool, version, schema, scenario and its hash.
nlohmann::json report_header(const Scenario& s);

/// Loads, executes and writes <prefix>.csv / <prefix>.json; maps errors to
/// exit codes and prints diagnostics to `err`.
int run_file(const std::filesystem::path& scenario_path,
             const std::filesystem::path* prefix_override, bool quiet, std::ostream& out,
             std::ostream& err);

} // namespace pdm::cli
