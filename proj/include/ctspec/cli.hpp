#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ctspec/config.hpp"

namespace ctspec {

inline constexpr int kExitPass = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitConfig = 2;

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
  std::string subcommand;
  Config config;
  std::optional<int> degree;
  std::vector<double> times{0.5, 1.0, 2.0};
};

const std::vector<std::string>& subcommands();

// Runs one subcommand, writes <output.dir>/<subcommand>.json and its CSV tables, and
// returns the exit code. Progress lines go to log.
int run(const RunOptions& opts, std::ostream& log);

}  // namespace ctspec
