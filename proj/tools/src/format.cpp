#include "format.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#ifdef FRACDIFF_VENDORED_JSON
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

namespace fracdiff::cli {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof buffer, x,
                    std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

std::string render_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& table) {
  auto records = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json record = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const bool numeric = i < table.numeric.size() && table.numeric[i];
      const std::string& cell = row[i];
      const bool integral =
          !cell.empty() && cell.find_first_not_of("-0123456789") == std::string::npos;
      if (numeric && integral) {
        record[table.header[i]] = std::stoll(cell);
      } else if (numeric && cell != "nan" && cell != "inf" && cell != "-inf") {
        // Parsed back from the 17-digit text: round-trips the double. strtod
        // rather than stod so subnormal cells do not throw.
        record[table.header[i]] = std::strtod(cell.c_str(), nullptr);
      } else if (cell == "true" || cell == "false") {
        record[table.header[i]] = cell == "true";
      } else {
        record[table.header[i]] = cell;
      }
    }
    records.push_back(std::move(record));
  }
  return records.dump(2) + "\n";
}

}  // namespace fracdiff::cli
