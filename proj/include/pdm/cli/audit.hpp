#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pdm/cli/scenario.hpp"

namespace pdm::cli {

enum class Status { confirmed, refuted, inconclusive };
std::string_view to_string(Status s);

/// One checked claim. `claim` is what the printed formula asserts; `status`
/// says whether the independent computation supports it.
struct Discrepancy {
  std::string code;
  std::string claim;
  Status status = Status::inconclusive;
  std::string finding;
  nlohmann::json evidence;
};

/// Codes in report order. Every audit run reports all of them.
const std::vector<std::string>& discrepancy_codes();

/// Runs every check. Example parameters come from the scenario (defaults when
/// the scenario is about another problem); grids from scenario.grid.
std::vector<Discrepancy> adjudicate(const Scenario& s);

nlohmann::json to_json(const Discrepancy& d);

} // namespace pdm::cli
