#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pdm/ordering.hpp"
#include "pdm/problems.hpp"

namespace pdm::cli {

inline constexpr std::string_view kSchema = "pdm-spectra/1";
inline constexpr std::string_view kToolVersion = "1.0.0";

enum class Command { spectrum, audit, identities, sweep, convergence };
enum class ProblemKind { example1, example2, custom };

std::string_view to_string(Command c);
std::string_view to_string(ProblemKind k);

struct ProblemSpec {
  ProblemKind kind = ProblemKind::example1;
  Example1 ex1;
  Example2 ex2;
  /// Profile trees for custom problems, kept as written.
  nlohmann::json mass;
  nlohmann::json potential;
  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// A catalog name, or an explicit triple when `name` is empty.
struct OrderingSpec {
  std::optional<OrderingName> name = OrderingName::weyl;
  double a = 1.0;
  double alpha = 0.0;
  double gamma = 0.0;

  [[nodiscard]] OrderingParams params() const;
  [[nodiscard]] std::string label() const;
  friend bool operator==(const OrderingSpec&, const OrderingSpec&) = default;
};

struct GridSpec {
  int points = 400;
  int levels = 3;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// `count` evenly spaced values from lo to hi inclusive.
struct Range {
  double lo = -1.5;
  double hi = 1.5;
  int count = 5;
  [[nodiscard]] double at(int i) const;
  friend bool operator==(const Range&, const Range&) = default;
};

struct SweepSpec {
  Range a;
  Range alpha;
  Range gamma;
  bool include_catalog = false;
  /// Also solve example 1 numerically for each row.
  bool numeric = false;
  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct Scenario {
  std::string name = "example1-weyl";
  Command command = Command::spectrum;
  ProblemSpec problem;
  OrderingSpec ordering;
  double hbar = 1.0;
  std::optional<Interval> domain;
  GridSpec grid;
  int k = 5;
  std::string output = "example1-weyl";
  SweepSpec sweep;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws SchemaError naming the offending key and the accepted alternatives.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json to_json(const Scenario& s);
Scenario default_scenario();

/// Builds a profile from its JSON tree. Kinds: const, identity, exp, power,
/// poly, gaussian, log, cos, sum, product, scale, recip, compose.
SmoothFn build_profile(const nlohmann::json& node);

/// The problem the scenario describes, with its default domain when none is given.
SpectralProblem build_problem(const Scenario& s);

} // namespace pdm::cli
