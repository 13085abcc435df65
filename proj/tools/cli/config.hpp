#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aet/coefficients.hpp"
#include "aet/constants.hpp"
#include "aet/numeric.hpp"
#include "aet/product.hpp"

namespace aet::cli {

enum class Command {
  constants,
  table,
  error_term,
  decompose,
  verify_identity,
  volterra,
  growth,
  series_check,
};

enum class OutputFormat { csv, json };

std::string_view to_string(Command command);

struct AnchorSpec {
  double x = 1.0;
  std::optional<Complex> value;  // empty: filled from f_1 ("auto")
};

struct RunConfig {
  Command command = Command::constants;
  EulerProductSpec product = EulerProductSpec::zeta();
  std::optional<std::uint64_t> N;
  std::optional<NumericMode> mode;
  std::vector<Rational> xs;
  Convention convention = Convention::plain;
  double s = 3.0;
  double X = 20.0;
  double h = 1e-3;
  Complex A{};
  std::optional<AnchorSpec> anchor;
  std::uint64_t prime_cutoff = 1'000'000;
  std::optional<A1Mode> a1_mode;
  std::uint64_t a1_cutoff = 1'000'000;
  std::uint64_t samples = 0;  // 0: every integer
  double tolerance = 1e-5;
  OutputFormat format = OutputFormat::csv;
  std::optional<std::filesystem::path> output;
  std::optional<std::filesystem::path> cache_dir;

  NumericMode numeric_mode() const;
  // Explicit --N, otherwise what the command needs.
  std::uint64_t table_size() const;
};

// Thrown for --help; carries the rendered help text.
struct HelpRequested {
  std::string text;
};

// Flags override values from --config FILE (JSON with the same keys as the
// long flags). The cache directory comes from AET_CACHE_DIR unless given.
// Throws Error(UsageError) naming the offending flag.
RunConfig parse_config(const std::vector<std::string>& args,
                       const std::optional<std::string>& cache_env = std::nullopt);

// "a:b:step" ranges (inclusive), plain numbers, or comma-separated mixes.
std::vector<Rational> parse_x_list(std::string_view text);

}  // namespace aet::cli
