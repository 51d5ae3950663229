#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ctspec/cli.hpp"

using namespace ctspec;
namespace fs = std::filesystem;

namespace {
Config parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

nlohmann::ordered_json read_json(const fs::path& p) {
  std::ifstream f(p);
  return nlohmann::ordered_json::parse(f);
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("ctspec_test_" + name);
  fs::remove_all(d);
  return d;
}
}  // namespace

TEST_CASE("config parsing") {
  const Config c = parse("jobs = 2\n[model]\nN = 6\nholonomy = 0.3,0.1,0.45\n[sweep]\neps = 0.5,0.25\ndegrees = 1,2\n"
                         "[solver]\nmode = lowest-k\nk = 4\n[tol]\nrank = 1e-8\n[output]\ndir = results\n");
  CHECK(c.N == 6);
  CHECK(c.holonomy[2] == doctest::Approx(0.45));
  CHECK(c.eps == std::vector<double>{0.5, 0.25});
  CHECK(c.degrees == std::vector<int>{1, 2});
  CHECK(c.mode == SolveMode::LowestK);
  CHECK(c.k == 4);
  CHECK(c.rank_tol == doctest::Approx(1e-8));
  CHECK(c.output_dir == "results");
  CHECK(c.jobs == 2);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse("[model]\nN = 5\n"), ConfigError);
  CHECK_THROWS_AS(parse("[model]\nNN = 8\n"), ConfigError);
  CHECK_THROWS_AS(parse("[model]\nholonomy = 0.1,0.2\n"), ConfigError);
  CHECK_THROWS_AS(parse("[model]\nholonomy = 0.1,1.0,0.2\n"), ConfigError);
  CHECK_THROWS_AS(parse("[sweep]\neps = 0.1,0.2\n"), ConfigError);
  CHECK_THROWS_AS(parse("[sweep]\ndegrees = 4\n"), ConfigError);
  CHECK_THROWS_AS(parse("[solver]\nmode = fastest\n"), ConfigError);
  CHECK_THROWS_AS(parse("[model]\nN = eight\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/ctspec.ini"), ConfigError);
}

TEST_CASE("canonical form and hash") {
  const Config a = parse("[model]\nN = 6\n"), b = parse("[model]\nN=6\n\n"), c = parse("[model]\nN = 8\n");
  CHECK(canonical(a) == canonical(b));
  CHECK(config_hash(canonical(a)) == config_hash(canonical(b)));
  CHECK(config_hash(canonical(a)) != config_hash(canonical(c)));
  CHECK(parse_reals("1, 2.5,-3") == std::vector<double>{1.0, 2.5, -3.0});
  CHECK(parse_ints("0,3") == std::vector<int>{0, 3});
}

TEST_CASE("unknown subcommand is a usage error") {
  RunOptions o;
  o.subcommand = "nope";
  std::ostringstream log;
  CHECK(run(o, log) == kExitConfig);
}

TEST_CASE("spectrum output is deterministic apart from the timestamp") {
  RunOptions o;
  o.subcommand = "spectrum";
  o.config.N = 4;
  o.config.holonomy = {0.3, 0.1, 0.45};
  std::ostringstream log;
  nlohmann::ordered_json first;
  std::string csv_first;
  const fs::path d = scratch("spectrum");
  o.config.output_dir = d.string();
  for (int i = 0; i < 2; ++i) {
    REQUIRE(run(o, log) == kExitPass);
    nlohmann::ordered_json j = read_json(d / "spectrum.json");
    CHECK(j["status"] == "pass");
    j.erase("timestamp");
    std::ifstream csv(d / "spectrum.csv");
    const std::string text((std::istreambuf_iterator<char>(csv)), {});
    if (i == 0) {
      first = j;
      csv_first = text;
    } else {
      CHECK(j == first);
      CHECK(text == csv_first);
    }
  }
}

TEST_CASE("tanno writes its table") {
  RunOptions o;
  o.subcommand = "tanno";
  const fs::path d = scratch("tanno");
  o.config.output_dir = d.string();
  std::ostringstream log;
  CHECK(run(o, log) == kExitPass);
  CHECK(fs::exists(d / "tanno.csv"));
  const nlohmann::ordered_json j = read_json(d / "tanno.json");
  for (const char* key : {"run_id", "subcommand", "config", "versions", "suites", "status", "timestamp"})
    CHECK(j.contains(key));
}
