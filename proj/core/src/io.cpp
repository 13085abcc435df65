#include "aet/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "aet/error.hpp"
#include "aet/primes.hpp"

namespace aet {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidProduct, what); }

void reject_unknown_keys(const json& object, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : object.items()) {
    (void)value;
    bool known = false;
    for (const char* name : allowed) known = known || key == name;
    if (!known) invalid("unknown key '" + key + "'");
  }
}

Complex complex_from_json(const json& value) {
  if (value.is_number()) return {value.get<double>(), 0.0};
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return {value[0].get<double>(), value[1].get<double>()};
  }
  invalid("complex numbers are numbers or [re, im] pairs, got " + value.dump());
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json real_or_pair(const Complex& z) {
  if (z.imag() == 0.0) return z.real();
  return complex_to_json(z);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

Complex parse_complex_cell(const std::string& cell) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double re = std::strtod(begin, &end);
  if (end == begin) throw Error(ErrorCode::IoError, "bad number '" + cell + "'");
  if (*end == '\0') return {re, 0.0};
  const char* imag_begin = end;
  const double im = std::strtod(imag_begin, &end);
  if (end == imag_begin || *end != 'i' || end[1] != '\0') {
    throw Error(ErrorCode::IoError, "bad complex number '" + cell + "'");
  }
  return {re, im};
}

Rational parse_rational_cell(const std::string& cell) {
  Rational q;
  if (q.set_str(cell, 10) != 0) throw Error(ErrorCode::IoError, "bad rational '" + cell + "'");
  q.canonicalize();
  return q;
}

std::string cache_header(const EulerProductSpec& spec, std::uint64_t N, NumericMode mode) {
  return "# aet-table-cache v1 spec=" + spec_hash(spec) + " N=" + std::to_string(N) +
         " mode=" + std::string(to_string(mode));
}

}  // namespace

// Rebuilds tables from serialized rows; befriended by the table classes.
class TableLoader {
 public:
  static TotientTable build(const EulerProductSpec& spec, std::uint64_t N, NumericMode mode,
                            std::istream& rows) {
    CoefficientTable coeffs(spec);
    coeffs.size_ = N;
    coeffs.mode_ = mode;
    coeffs.spf_ = smallest_prime_factors(static_cast<std::uint32_t>(N));
    coeffs.alpha_.assign(N + 1, Complex{});
    TotientTable table{CoefficientTable(spec)};
    table.phi_.assign(N + 1, Complex{});
    table.cumulative_.assign(N + 1, Complex{});
    if (mode == NumericMode::exact) {
      coeffs.alpha_exact_.assign(N + 1, Rational(0));
      table.phi_exact_.assign(N + 1, Rational(0));
      table.cumulative_exact_.assign(N + 1, Rational(0));
    }

    std::string line;
    if (!std::getline(rows, line) || line != "n,alpha,phi,cumulative") {
      throw Error(ErrorCode::IoError, "missing CSV header");
    }
    for (std::uint64_t n = 1; n <= N; ++n) {
      if (!std::getline(rows, line)) throw Error(ErrorCode::IoError, "truncated table file");
      std::vector<std::string> cells;
      std::stringstream split(line);
      for (std::string cell; std::getline(split, cell, ',');) cells.push_back(cell);
      if (cells.size() != 4 || cells[0] != std::to_string(n)) {
        throw Error(ErrorCode::IoError, "malformed row for n = " + std::to_string(n));
      }
      if (mode == NumericMode::exact) {
        coeffs.alpha_exact_[n] = parse_rational_cell(cells[1]);
        table.phi_exact_[n] = parse_rational_cell(cells[2]);
        table.cumulative_exact_[n] = parse_rational_cell(cells[3]);
        coeffs.alpha_[n] = {coeffs.alpha_exact_[n].get_d(), 0.0};
        table.phi_[n] = {table.phi_exact_[n].get_d(), 0.0};
        table.cumulative_[n] = {table.cumulative_exact_[n].get_d(), 0.0};
      } else {
        coeffs.alpha_[n] = parse_complex_cell(cells[1]);
        table.phi_[n] = parse_complex_cell(cells[2]);
        table.cumulative_[n] = parse_complex_cell(cells[3]);
      }
    }
    table.coefficients_ = std::move(coeffs);
    return table;
  }
};

EulerProductSpec parse_product(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    invalid(std::string("product JSON does not parse: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    invalid("product JSON needs a string \"kind\"");
  }
  const std::string kind = doc["kind"].get<std::string>();

  if (kind == "zeta") {
    reject_unknown_keys(doc, {"kind"});
    return EulerProductSpec::zeta();
  }

  if (kind == "dirichlet") {
    reject_unknown_keys(doc, {"kind", "modulus", "values", "kronecker"});
    if (doc.contains("kronecker")) {
      if (doc.contains("values")) invalid("give either \"kronecker\" or \"values\", not both");
      const auto D = doc["kronecker"].get<std::int64_t>();
      CharacterSpec chi = build_kronecker_character(D);
      if (doc.contains("modulus") && doc["modulus"].get<std::uint64_t>() != chi.modulus) {
        invalid("modulus disagrees with |D|");
      }
      return EulerProductSpec::dirichlet(std::move(chi));
    }
    if (!doc.contains("values") || !doc["values"].is_array()) {
      invalid("dirichlet products need \"kronecker\" or \"values\"");
    }
    std::vector<Complex> values;
    for (const json& v : doc["values"]) values.push_back(complex_from_json(v));
    const std::uint64_t q =
        doc.contains("modulus") ? doc["modulus"].get<std::uint64_t>() : values.size();
    return EulerProductSpec::dirichlet(build_character(q, std::move(values)));
  }

  if (kind == "custom") {
    reject_unknown_keys(doc, {"kind", "degree", "roots", "default"});
    if (!doc.contains("degree") || !doc["degree"].is_number_unsigned()) {
      invalid("custom products need a positive integer \"degree\"");
    }
    const auto degree = doc["degree"].get<unsigned>();
    DefaultRule rule = DefaultRule::zero;
    if (doc.contains("default")) {
      const std::string name = doc["default"].get<std::string>();
      if (name == "zero") {
        rule = DefaultRule::zero;
      } else if (name == "one") {
        rule = DefaultRule::one;
      } else {
        invalid("\"default\" must be \"zero\" or \"one\"");
      }
    }
    EulerProductSpec::RootTable roots;
    if (doc.contains("roots")) {
      if (!doc["roots"].is_object()) invalid("\"roots\" must map primes to root lists");
      for (const auto& [key, list] : doc["roots"].items()) {
        std::uint64_t p = 0;
        try {
          std::size_t used = 0;
          p = std::stoull(key, &used);
          if (used != key.size()) invalid("bad prime key '" + key + "'");
        } catch (const std::logic_error&) {
          invalid("bad prime key '" + key + "'");
        }
        if (!list.is_array()) invalid("roots of " + key + " must be a list");
        std::vector<Complex> alphas;
        for (const json& v : list) alphas.push_back(complex_from_json(v));
        roots.emplace(p, std::move(alphas));
      }
    }
    return EulerProductSpec::custom(degree, std::move(roots), rule);
  }

  invalid("unknown kind '" + kind + "'");
}

EulerProductSpec load_product(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_product(buffer.str());
}

std::string serialize_product(const EulerProductSpec& spec) {
  json doc;
  switch (spec.kind()) {
    case ProductKind::zeta:
      doc["kind"] = "zeta";
      break;
    case ProductKind::dirichlet: {
      const CharacterSpec& chi = spec.character();
      doc["kind"] = "dirichlet";
      doc["modulus"] = chi.modulus;
      json values = json::array();
      for (const Complex& v : chi.values) values.push_back(real_or_pair(v));
      doc["values"] = values;
      break;
    }
    case ProductKind::custom: {
      doc["kind"] = "custom";
      doc["degree"] = spec.degree();
      json roots = json::object();
      for (const auto& [p, alphas] : spec.root_table()) {
        json list = json::array();
        for (const Complex& a : alphas) list.push_back(complex_to_json(a));
        roots[std::to_string(p)] = list;
      }
      doc["roots"] = roots;
      doc["default"] = spec.default_rule() == DefaultRule::one ? "one" : "zero";
      break;
    }
  }
  return doc.dump();
}

std::string spec_hash(const EulerProductSpec& spec) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(serialize_product(spec))));
  return buf;
}

void write_table_csv(const TotientTable& table, std::ostream& out) {
  out << "n,alpha,phi,cumulative\n";
  const std::uint64_t N = table.size();
  if (table.mode() == NumericMode::exact) {
    const auto alpha = table.coefficients().alpha_exact();
    const auto phi = table.phi_exact();
    const auto cumulative = table.cumulative_exact();
    for (std::uint64_t n = 1; n <= N; ++n) {
      out << n << ',' << format_rational(alpha[n]) << ',' << format_rational(phi[n]) << ','
          << format_rational(cumulative[n]) << '\n';
    }
    return;
  }
  const auto alpha = table.coefficients().alpha();
  const auto phi = table.phi();
  const auto cumulative = table.cumulative();
  for (std::uint64_t n = 1; n <= N; ++n) {
    out << n << ',' << format_complex(alpha[n]) << ',' << format_complex(phi[n]) << ','
        << format_complex(cumulative[n]) << '\n';
  }
}

void write_table_cache(const TotientTable& table, const std::filesystem::path& path) {
  const auto temporary = path.string() + ".tmp";
  {
    std::ofstream out(temporary, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + temporary);
    out << cache_header(table.coefficients().spec(), table.size(), table.mode()) << '\n';
    write_table_csv(table, out);
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + temporary);
  }
  std::filesystem::rename(temporary, path);
}

TotientTable read_table_cache(const std::filesystem::path& path, const EulerProductSpec& spec,
                              std::uint64_t N, NumericMode mode) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::string header;
  std::getline(in, header);
  if (header != cache_header(spec, N, mode)) {
    throw Error(ErrorCode::CacheMismatch, path.string() + " was written for another request");
  }
  return TableLoader::build(spec, N, mode, in);
}

TotientTable load_or_build_table(const EulerProductSpec& spec, std::uint64_t N, NumericMode mode,
                                 const std::optional<std::filesystem::path>& cache_dir) {
  if (!cache_dir) return phi_table(spec, N, mode);
  const auto path = *cache_dir / (spec_hash(spec) + "-" + std::to_string(N) + "-" +
                                  std::string(to_string(mode)) + ".csv");
  if (std::filesystem::exists(path)) {
    try {
      return read_table_cache(path, spec, N, mode);
    } catch (const Error&) {
      // stale or damaged; rebuilt below
    }
  }
  TotientTable table = phi_table(spec, N, mode);
  std::filesystem::create_directories(*cache_dir);
  write_table_cache(table, path);
  return table;
}

}  // namespace aet
