#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aet/character.hpp"
#include "aet/error.hpp"
#include "aet/io.hpp"

namespace aet::cli {

namespace {

using Json = nlohmann::json;

struct CommandInfo {
  Command command;
  const char* name;
  const char* description;
};

constexpr CommandInfo kCommands[] = {
    {Command::constants, "constants", "C(F), A_1, A_2 and L-values"},
    {Command::table, "table", "coefficient and totient table"},
    {Command::error_term, "error-term", "error term E or E_2 at x"},
    {Command::decompose, "decompose", "E_2 = x f_1 + g_1/2 at each x"},
    {Command::verify_identity, "verify-identity", "exact reduced identity at each x"},
    {Command::volterra, "volterra", "Volterra residual, solve and probe"},
    {Command::growth, "growth", "scan of |E(x)| / (x (log 2x)^d)"},
    {Command::series_check, "series-check", "Dirichlet series identity at s"},
};

// Keys accepted both as --flags and as config file keys.
constexpr const char* kKeys[] = {
    "product", "product-file", "kronecker", "modulus",  "values",     "N",
    "mode",    "x",            "convention", "s",       "X",          "h",
    "A",       "anchor",       "prime-cutoff", "a1-mode", "a1-cutoff", "samples",
    "tolerance", "format",     "output",
};

[[noreturn]] void usage(const std::string& flag, const std::string& message) {
  throw Error(ErrorCode::UsageError, "--" + flag + ": " + message);
}

std::string trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& flag, const std::string& text) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(value)) usage(flag, "not a number: " + text);
    return value;
  } catch (const std::logic_error&) {
    usage(flag, "not a number: " + text);
  }
}

std::uint64_t parse_count(const std::string& flag, const std::string& text) {
  // Accepts 1000000 as well as 1e6 when the value is an exact integer.
  const double value = parse_double(flag, text);
  if (value < 0 || value != std::floor(value) || value > 9.0e15) {
    usage(flag, "expected a non-negative integer: " + text);
  }
  return static_cast<std::uint64_t>(value);
}

std::int64_t parse_integer(const std::string& flag, const std::string& text) {
  const double value = parse_double(flag, text);
  if (value != std::floor(value) || std::abs(value) > 9.0e15) {
    usage(flag, "expected an integer: " + text);
  }
  return static_cast<std::int64_t>(value);
}

Complex parse_complex(const std::string& flag, const std::string& text) {
  // "re" or "re:im"
  const auto parts = split(text, ':');
  if (parts.size() == 1) return {parse_double(flag, parts[0]), 0.0};
  if (parts.size() == 2) return {parse_double(flag, parts[0]), parse_double(flag, parts[1])};
  usage(flag, "expected re or re:im: " + text);
}

// Raw product description; resolved once all sources are merged.
struct ProductInput {
  std::optional<std::string> product;
  std::optional<std::string> product_json;  // inline object from a config file
  std::optional<std::string> product_file;
  std::optional<std::string> kronecker;
  std::optional<std::string> modulus;
  std::optional<std::string> values;
};

struct Pending {
  ProductInput product;
  std::optional<std::string> x;
  std::optional<std::string> anchor;
};

void apply(RunConfig& cfg, Pending& pending, const std::string& key, const std::string& value) {
  if (key == "product") {
    pending.product.product = value;
    pending.product.product_json.reset();
  } else if (key == "product-file") {
    pending.product.product_file = value;
  } else if (key == "kronecker") {
    pending.product.kronecker = value;
  } else if (key == "modulus") {
    pending.product.modulus = value;
  } else if (key == "values") {
    pending.product.values = value;
  } else if (key == "N") {
    const auto n = parse_count(key, value);
    if (n < 1) usage(key, "N must be at least 1");
    cfg.N = n;
  } else if (key == "mode") {
    if (value == "exact") {
      cfg.mode = NumericMode::exact;
    } else if (value == "float") {
      cfg.mode = NumericMode::floating;
    } else {
      usage(key, "expected exact or float: " + value);
    }
  } else if (key == "x") {
    pending.x = value;
  } else if (key == "convention") {
    if (value == "plain") {
      cfg.convention = Convention::plain;
    } else if (value == "symmetric") {
      cfg.convention = Convention::symmetric;
    } else {
      usage(key, "expected plain or symmetric: " + value);
    }
  } else if (key == "s") {
    cfg.s = parse_double(key, value);
  } else if (key == "X") {
    cfg.X = parse_double(key, value);
    if (cfg.X <= 0) usage(key, "X must be positive");
  } else if (key == "h") {
    cfg.h = parse_double(key, value);
    if (cfg.h <= 0) usage(key, "h must be positive");
  } else if (key == "A") {
    cfg.A = parse_complex(key, value);
  } else if (key == "anchor") {
    pending.anchor = value;
  } else if (key == "prime-cutoff") {
    cfg.prime_cutoff = parse_count(key, value);
  } else if (key == "a1-mode") {
    if (value == "closed" || value == "closed-form") {
      cfg.a1_mode = A1Mode::closed_form;
    } else if (value == "partial" || value == "partial-sums") {
      cfg.a1_mode = A1Mode::partial_sums;
    } else {
      usage(key, "expected closed or partial: " + value);
    }
  } else if (key == "a1-cutoff") {
    cfg.a1_cutoff = parse_count(key, value);
  } else if (key == "samples") {
    cfg.samples = parse_count(key, value);
  } else if (key == "tolerance") {
    cfg.tolerance = parse_double(key, value);
    if (cfg.tolerance <= 0) usage(key, "tolerance must be positive");
  } else if (key == "format") {
    if (value == "csv") {
      cfg.format = OutputFormat::csv;
    } else if (value == "json") {
      cfg.format = OutputFormat::json;
    } else {
      usage(key, "expected csv or json: " + value);
    }
  } else if (key == "output") {
    cfg.output = value;
  } else {
    usage(key, "unknown option");
  }
}

std::vector<Complex> parse_character_values(const std::string& text) {
  std::vector<Complex> values;
  for (const auto& part : split(text, ',')) values.push_back(parse_complex("values", part));
  return values;
}

EulerProductSpec resolve_product(const ProductInput& in) {
  if (in.product_json) return parse_product(*in.product_json);
  if (in.product_file) return load_product(*in.product_file);
  const std::string kind = in.product.value_or("zeta");
  if (kind == "zeta") {
    if (in.kronecker || in.modulus || in.values) {
      usage("product", "zeta takes no character flags");
    }
    return EulerProductSpec::zeta();
  }
  if (kind == "dirichlet") {
    if (in.kronecker) {
      if (in.modulus || in.values) usage("kronecker", "cannot be combined with --modulus/--values");
      return EulerProductSpec::dirichlet(
          build_kronecker_character(parse_integer("kronecker", *in.kronecker)));
    }
    if (!in.modulus || !in.values) {
      usage("product", "dirichlet needs --kronecker D or --modulus q with --values");
    }
    return EulerProductSpec::dirichlet(
        build_character(parse_count("modulus", *in.modulus), parse_character_values(*in.values)));
  }
  if (kind == "custom") usage("product", "custom products are read from --product-file");
  if (kind.ends_with(".json") || std::filesystem::exists(kind)) return load_product(kind);
  usage("product", "expected zeta, dirichlet or a product file: " + kind);
}

AnchorSpec parse_anchor(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) usage("anchor", "expected x0=auto or x0=value: " + text);
  AnchorSpec anchor;
  anchor.x = parse_double("anchor", trim(std::string_view(text).substr(0, eq)));
  const std::string rhs = trim(std::string_view(text).substr(eq + 1));
  if (rhs != "auto") anchor.value = parse_complex("anchor", rhs);
  return anchor;
}

std::string json_value_text(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    // ["1:10:1", "12"] style lists are joined with commas.
    std::string joined;
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (i) joined += ',';
      joined += json_value_text(value[i]);
    }
    return joined;
  }
  return value.dump();
}

void apply_config_file(RunConfig& cfg, Pending& pending, const std::string& path) {
  std::ifstream in(path);
  if (!in) usage("config", "cannot read " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    usage("config", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) usage("config", "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "product" && value.is_object()) {
      pending.product.product_json = value.dump();
      pending.product.product.reset();
      continue;
    }
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      usage(key, "unknown key in config file");
    }
    apply(cfg, pending, key, json_value_text(value));
  }
}

void validate(RunConfig& cfg) {
  if (cfg.command == Command::verify_identity && cfg.mode == NumericMode::floating) {
    usage("mode", "verify-identity runs in exact mode");
  }
  if (cfg.command == Command::volterra && cfg.mode == NumericMode::exact) {
    usage("mode", "volterra runs in float mode");
  }
  if (cfg.command == Command::growth && cfg.mode == NumericMode::exact) {
    usage("mode", "growth runs in float mode");
  }
  if (cfg.command == Command::series_check && cfg.mode == NumericMode::exact) {
    usage("mode", "series-check runs in float mode");
  }
  const bool needs_x = cfg.command == Command::error_term || cfg.command == Command::decompose ||
                       cfg.command == Command::verify_identity;
  if (needs_x && cfg.xs.empty()) usage("x", "required for " + std::string(to_string(cfg.command)));
  if (cfg.N) {
    for (const auto& x : cfg.xs) {
      if (x > Rational(static_cast<unsigned long>(*cfg.N))) {
        usage("x", "value " + format_rational(x) + " exceeds --N " + std::to_string(*cfg.N));
      }
    }
    if ((cfg.command == Command::growth) && cfg.X > static_cast<double>(*cfg.N)) {
      usage("X", "exceeds --N");
    }
  }
  if (cfg.command == Command::table && !cfg.N) usage("N", "required for table");
  if (cfg.command == Command::growth && cfg.X != std::floor(cfg.X)) {
    usage("X", "growth scans integers up to an integer X");
  }
  if (cfg.anchor && (cfg.anchor->x <= 0 || cfg.anchor->x > cfg.X)) {
    usage("anchor", "x0 must lie in (0, X]");
  }
}

}  // namespace

std::string_view to_string(Command command) {
  for (const auto& info : kCommands) {
    if (info.command == command) return info.name;
  }
  return "unknown";
}

NumericMode RunConfig::numeric_mode() const {
  if (mode) return *mode;
  return command == Command::verify_identity ? NumericMode::exact : NumericMode::floating;
}

std::uint64_t RunConfig::table_size() const {
  if (N) return *N;
  const auto ceil_x = [](double v) {
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(v)));
  };
  switch (command) {
    case Command::error_term:
    case Command::decompose:
    case Command::verify_identity: {
      Rational top(1);
      for (const auto& x : xs) top = std::max(top, x);
      return ceil_x(top.get_d());
    }
    case Command::volterra:
      return ceil_x(X) + 1;
    case Command::growth:
      return ceil_x(X);
    case Command::series_check:
      return 1'000'000;
    case Command::constants:
    case Command::table:
      break;
  }
  return 1;
}

std::vector<Rational> parse_x_list(std::string_view text) {
  std::vector<Rational> xs;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) usage("x", "empty entry");
    const auto parts = split(item, ':');
    const auto number = [](const std::string& s) {
      try {
        return parse_rational(s);
      } catch (const Error&) {
        usage("x", "not a number: " + s);
      }
    };
    if (parts.size() == 1) {
      xs.push_back(number(parts[0]));
    } else if (parts.size() == 3) {
      const Rational a = number(parts[0]);
      const Rational b = number(parts[1]);
      const Rational step = number(parts[2]);
      if (step <= 0) usage("x", "range step must be positive: " + item);
      if (b < a) usage("x", "range end below start: " + item);
      const Rational count_q = (b - a) / step;
      const mpz_class count = count_q.get_num() / count_q.get_den();
      if (count > 10'000'000) usage("x", "range too long: " + item);
      for (mpz_class k = 0; k <= count; ++k) xs.push_back(Rational(a + step * k));
    } else {
      usage("x", "expected a value or a:b:step: " + item);
    }
  }
  for (const auto& x : xs) {
    if (x < 0) usage("x", "values must be non-negative");
  }
  return xs;
}

RunConfig parse_config(const std::vector<std::string>& args,
                       const std::optional<std::string>& cache_env) {
  CLI::App app{"Associated Euler totient toolkit", "aet"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", AET_VERSION);

  std::map<std::string, std::string> raw;
  std::string config_path;
  std::map<CLI::App*, Command> by_app;
  for (const auto& info : kCommands) {
    CLI::App* sub = app.add_subcommand(info.name, info.description);
    by_app[sub] = info.command;
    sub->add_option("--config", config_path, "JSON file with default values for these flags");
    for (const char* key : kKeys) {
      sub->add_option(std::string("--") + key, raw[key]);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested{std::string(AET_VERSION) + "\n"};
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::UsageError, e.what());
  }

  CLI::App* chosen = app.get_subcommands().front();
  RunConfig cfg;
  cfg.command = by_app.at(chosen);

  Pending pending;
  if (!config_path.empty()) apply_config_file(cfg, pending, config_path);
  for (const char* key : kKeys) {
    if (chosen->get_option(std::string("--") + key)->count() > 0) {
      if (std::string(key) == "product") pending.product.product_json.reset();
      apply(cfg, pending, key, raw[key]);
    }
  }

  cfg.product = resolve_product(pending.product);
  if (pending.x) cfg.xs = parse_x_list(*pending.x);
  if (pending.anchor) cfg.anchor = parse_anchor(*pending.anchor);
  if (cache_env && !cache_env->empty()) cfg.cache_dir = *cache_env;
  validate(cfg);
  return cfg;
}

}  // namespace aet::cli
