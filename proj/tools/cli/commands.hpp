#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "aet/error.hpp"
#include "cli/config.hpp"
#include "cli/report.hpp"

namespace aet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// 2 for UsageError, 10 + numeric code for every other error class.
int exit_code(ErrorCode code);

Report run_command(const RunConfig& cfg);

// Full front-end: parse, run, emit. Returns the process exit code.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const std::optional<std::string>& cache_env = std::nullopt);

}  // namespace aet::cli
