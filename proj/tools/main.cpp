#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> cache_env;
  if (const char* dir = std::getenv("AET_CACHE_DIR")) cache_env = dir;
  return aet::cli::run_main(args, std::cout, std::cerr, cache_env);
}
