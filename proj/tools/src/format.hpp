#pragma once

#include <string>
#include <vector>

namespace fracdiff::cli {

/// Shortest-independent fixed format: 17 significant digits, "inf"/"nan"
/// spelled out, so reruns produce identical bytes.
std::string format_real(double x);

/// Rows of already formatted cells with a header; rendered as CSV (LF line
/// ends) or as a JSON array of records keyed by the header.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// Columns whose cells are JSON numbers rather than strings.
  std::vector<bool> numeric;
};

std::string render_csv(const Table& table);
std::string render_json(const Table& table);

}  // namespace fracdiff::cli
