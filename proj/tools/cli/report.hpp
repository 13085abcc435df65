#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "aet/numeric.hpp"
#include "cli/config.hpp"

namespace aet::cli {

using Cell = std::variant<std::monostate, std::string, std::int64_t, double, Complex, Rational, bool>;

struct SummaryEntry {
  std::string key;
  Cell value;
  std::optional<double> bound;
  std::optional<BoundKind> kind;
};

struct Report {
  std::string command;
  std::string spec_hash;
  NumericMode mode = NumericMode::floating;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<SummaryEntry> summary;
  bool passed = true;
};

// CSV: header row, data rows, then "# key=value" summary lines.
// JSON: {"meta": {...}, "rows": [...], <summary keys>}; floats carry 17
// significant digits, rationals are "p/q" strings.
void emit_report(const Report& report, OutputFormat format, std::ostream& out);

// Writes to path, or to fallback when path is empty. Throws Error(IoError).
void emit_report(const Report& report, OutputFormat format,
                 const std::optional<std::filesystem::path>& path, std::ostream& fallback);

std::string format_cell(const Cell& cell);

}  // namespace aet::cli
