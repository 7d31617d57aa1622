#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pdm/cli/runner.hpp"
#include "pdm/cli/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spectra of position-dependent-mass Hamiltonians from JSON scenarios"};
  std::string scenario;
  std::string out;
  bool dump_default = false;
  bool quiet = false;
  app.add_option("scenario", scenario, "scenario JSON file");
  app.add_option("--out", out, "output prefix, overriding the scenario's \"output\"");
  app.add_flag("--dump-default", dump_default, "print the default scenario and exit");
  app.add_flag("--quiet,-q", quiet, "no progress line on stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pdm::cli::kSchemaError;
  }

  if (dump_default) {
    std::cout << pdm::cli::to_json(pdm::cli::default_scenario()).dump(2) << '\n';
    return 0;
  }
  if (scenario.empty()) {
    std::cerr << "pdm-spectra: a scenario file is required (see --help)\n";
    return pdm::cli::kSchemaError;
  }
  const std::filesystem::path prefix = out;
  return pdm::cli::run_file(scenario, out.empty() ? nullptr : &prefix, quiet, std::cout,
                            std::cerr);
}
