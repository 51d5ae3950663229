#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctspec/spectra.hpp"

namespace ctspec {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int N = 8;
  Holonomy holonomy{0.0, 0.0, 0.0};
  Holonomy holonomy2{0.2, 0.35, 0.15};  // partner twist for relative quantities
  std::vector<double> eps{0.4, 0.2, 0.1};
  std::vector<int> degrees{0, 1, 2, 3};
  SolveMode mode = SolveMode::Full;
  int k = 10;
  double rank_tol = 1e-9;
  double zero_tol = 1e-9;
  std::string output_dir = "out";
  int jobs = 1;
};

// Flat INI text:
//   [model]  N, holonomy = a,b,c, holonomy2 = a,b,c
//   [sweep]  eps = 0.4,0.2,0.1   degrees = 0,1,2,3
//   [solver] mode = full | lowest-k, k
//   [tol]    rank, zero
//   [output] dir
//   jobs at top level
Config parse_config(std::istream& in);
Config load_config(const std::string& path);
void validate(const Config& c);

// Stable key=value rendering (sorted keys, %.17g numbers) and its FNV-1a hash.
std::string canonical(const Config& c);
std::string config_hash(const std::string& text);

std::vector<double> parse_reals(const std::string& text);
std::vector<int> parse_ints(const std::string& text);

}  // namespace ctspec
