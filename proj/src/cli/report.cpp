#include "pdm/cli/report.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>

#include <fmt/format.h>

#include "pdm/errors.hpp"

namespace pdm::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v + 0.0);  // no "-0"
}

std::string CsvTable::render() const {
  std::string out;
  auto cell = [&](const std::string& c) {
    if (c.find_first_of(",\"\n") == std::string::npos) {
      out += c;
      return;
    }
    out += '"';
    for (char ch : c) {
      if (ch == '"') out += '"';
      out += ch;
    }
    out += '"';
  };
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      cell(cells[i]);
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

void write_outputs(const std::filesystem::path& prefix, const CsvTable& csv,
                   const nlohmann::json& report) {
  if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());
  const auto write = [](const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << body;
  };
  write(prefix.string() + ".csv", csv.render());
  write(prefix.string() + ".json", report.dump(2) + "\n");
}

nlohmann::json json_number(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

} // namespace pdm::cli
