#include "cli/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "aet/error.hpp"

namespace aet::cli {

namespace {

std::string json_string(const std::string& text) { return nlohmann::json(text).dump(); }

std::string json_number(double value) {
  return std::isfinite(value) ? format_double(value) : "null";
}

std::string json_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
          return "null";
        } else if constexpr (std::is_same_v<V, std::string>) {
          return json_string(v);
        } else if constexpr (std::is_same_v<V, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<V, double>) {
          return json_number(v);
        } else if constexpr (std::is_same_v<V, Complex>) {
          if (v.imag() == 0.0) return json_number(v.real());
          return "[" + json_number(v.real()) + "," + json_number(v.imag()) + "]";
        } else if constexpr (std::is_same_v<V, Rational>) {
          return json_string(format_rational(v));
        } else {
          return v ? "true" : "false";
        }
      },
      cell);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void emit_csv(const Report& report, std::ostream& out) {
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    out << (i ? "," : "") << csv_field(report.columns[i]);
  }
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_field(format_cell(row[i]));
    }
    out << '\n';
  }
  for (const auto& entry : report.summary) {
    out << "# " << entry.key << '=' << format_cell(entry.value);
    if (entry.bound) out << " bound=" << format_double(*entry.bound);
    if (entry.kind) out << " kind=" << to_string(*entry.kind);
    out << '\n';
  }
}

void emit_json(const Report& report, std::ostream& out) {
  out << "{\n  \"meta\": {\"command\": " << json_string(report.command)
      << ", \"spec_hash\": " << json_string(report.spec_hash)
      << ", \"version\": " << json_string(AET_VERSION)
      << ", \"mode\": " << json_string(std::string(to_string(report.mode))) << "},\n";
  out << "  \"columns\": [";
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    out << (i ? ", " : "") << json_string(report.columns[i]);
  }
  out << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    out << (r ? ",\n    {" : "\n    {");
    const auto& row = report.rows[r];
    for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) {
      out << (i ? ", " : "") << json_string(report.columns[i]) << ": " << json_cell(row[i]);
    }
    out << "}";
  }
  out << (report.rows.empty() ? "]" : "\n  ]");
  for (const auto& entry : report.summary) {
    out << ",\n  " << json_string(entry.key) << ": ";
    if (!entry.bound && !entry.kind) {
      out << json_cell(entry.value);
      continue;
    }
    out << "{\"value\": " << json_cell(entry.value);
    if (entry.bound) out << ", \"bound\": " << json_number(*entry.bound);
    if (entry.kind) {
      out << ", \"kind\": " << json_string(std::string(to_string(*entry.kind)));
    }
    out << "}";
  }
  out << ",\n  \"passed\": " << (report.passed ? "true" : "false") << "\n}\n";
}

}  // namespace

std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<V, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<V, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<V, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<V, Complex>) {
          return format_complex(v);
        } else if constexpr (std::is_same_v<V, Rational>) {
          return format_rational(v);
        } else {
          return v ? "true" : "false";
        }
      },
      cell);
}

void emit_report(const Report& report, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::csv) {
    emit_csv(report, out);
  } else {
    emit_json(report, out);
  }
}

void emit_report(const Report& report, OutputFormat format,
                 const std::optional<std::filesystem::path>& path, std::ostream& fallback) {
  if (!path) {
    emit_report(report, format, fallback);
    fallback.flush();
    if (!fallback) throw Error(ErrorCode::IoError, "cannot write report");
    return;
  }
  std::ostringstream buffer;
  emit_report(report, format, buffer);
  std::ofstream out(*path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path->string());
  out << buffer.str();
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path->string());
}

}  // namespace aet::cli
