#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pdm::cli {

/// 17 significant digits, '.' decimal separator; "nan"/"inf"/"-inf" otherwise.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Comma separated, newline terminated, cells with commas or quotes quoted.
  [[nodiscard]] std::string render() const;
};

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a64(std::string_view bytes);

/// Writes <prefix>.csv and <prefix>.json, creating parent directories.
void write_outputs(const std::filesystem::path& prefix, const CsvTable& csv,
                   const nlohmann::json& report);

/// JSON number, or null when not finite (JSON has no NaN).
nlohmann::json json_number(double v);

} // namespace pdm::cli
