#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "aet/coefficients.hpp"
#include "aet/product.hpp"

namespace aet {

// Product description files:
//   {"kind":"zeta"}
//   {"kind":"dirichlet","modulus":q,"values":[...]}
//   {"kind":"dirichlet","kronecker":D}
//   {"kind":"custom","degree":d,"roots":{"2":[[re,im],...]},"default":"zero"|"one"}
// Character values may be plain numbers or [re,im] pairs.
EulerProductSpec parse_product(std::string_view json_text);
EulerProductSpec load_product(const std::filesystem::path& path);
std::string serialize_product(const EulerProductSpec& spec);

// FNV-1a over the canonical serialization, as 16 hex digits.
std::string spec_hash(const EulerProductSpec& spec);

// CSV with header n,alpha,phi,cumulative.
void write_table_csv(const TotientTable& table, std::ostream& out);

// Versioned cache file: a header line with spec hash, N and mode followed by
// the CSV body. Values round-trip exactly.
void write_table_cache(const TotientTable& table, const std::filesystem::path& path);

// Throws Error(CacheMismatch) when the header disagrees with the request and
// Error(IoError) on unreadable or malformed files.
TotientTable read_table_cache(const std::filesystem::path& path, const EulerProductSpec& spec,
                              std::uint64_t N, NumericMode mode);

// Uses <cache_dir>/<hash>-<N>-<mode>.csv when cache_dir is set.
TotientTable load_or_build_table(const EulerProductSpec& spec, std::uint64_t N, NumericMode mode,
                                 const std::optional<std::filesystem::path>& cache_dir);

}  // namespace aet
