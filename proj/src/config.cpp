#include "ctspec/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace ctspec {

namespace {

template <class T>
std::vector<T> split_list(const std::string& text, T (*conv)(const std::string&)) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ConfigError("empty list element in '" + text + "'");
    out.push_back(conv(item.substr(b, e - b + 1)));
  }
  return out;
}

double to_real(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

int to_int(const std::string& s) {
  const double v = to_real(s);
  if (v != static_cast<int>(v)) throw ConfigError("not an integer: '" + s + "'");
  return static_cast<int>(v);
}

Holonomy to_holonomy(const std::string& s) {
  const auto v = split_list<double>(s, to_real);
  if (v.size() != 3) throw ConfigError("holonomy needs three reals");
  return {v[0], v[1], v[2]};
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<double> parse_reals(const std::string& text) { return split_list<double>(text, to_real); }
std::vector<int> parse_ints(const std::string& text) { return split_list<int>(text, to_int); }

Config parse_config(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  static const char* known[] = {"model.N", "model.holonomy", "model.holonomy2", "sweep.eps", "sweep.degrees",
                                "solver.mode", "solver.k", "tol.rank", "tol.zero", "output.dir", "jobs"};
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      if (section != "jobs") throw ConfigError("unknown key '" + section + "'");
      continue;
    }
    for (const auto& [key, _] : body) {
      const std::string full = section + "." + key;
      bool ok = false;
      for (const char* k : known) ok = ok || full == k;
      if (!ok) throw ConfigError("unknown key '" + full + "'");
    }
  }
  Config c;
  auto get = [&](const char* path) { return tree.get_optional<std::string>(pt::ptree::path_type(path, '.')); };
  if (auto v = get("model.N")) c.N = to_int(*v);
  if (auto v = get("model.holonomy")) c.holonomy = to_holonomy(*v);
  if (auto v = get("model.holonomy2")) c.holonomy2 = to_holonomy(*v);
  if (auto v = get("sweep.eps")) c.eps = parse_reals(*v);
  if (auto v = get("sweep.degrees")) c.degrees = parse_ints(*v);
  if (auto v = get("solver.mode")) {
    if (*v == "full")
      c.mode = SolveMode::Full;
    else if (*v == "lowest-k")
      c.mode = SolveMode::LowestK;
    else
      throw ConfigError("solver.mode must be full or lowest-k");
  }
  if (auto v = get("solver.k")) c.k = to_int(*v);
  if (auto v = get("tol.rank")) c.rank_tol = to_real(*v);
  if (auto v = get("tol.zero")) c.zero_tol = to_real(*v);
  if (auto v = get("output.dir")) c.output_dir = *v;
  if (auto v = get("jobs")) c.jobs = to_int(*v);
  validate(c);
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config " + path);
  return parse_config(f);
}

void validate(const Config& c) {
  if (c.N < 4 || c.N % 2) throw ConfigError("model.N must be even and at least 4");
  for (const Holonomy* h : {&c.holonomy, &c.holonomy2})
    for (double a : *h)
      if (!(a >= 0.0 && a < 1.0)) throw ConfigError("holonomy entries must lie in [0,1)");
  if (c.eps.empty()) throw ConfigError("sweep.eps is empty");
  for (std::size_t i = 0; i < c.eps.size(); ++i) {
    if (!(c.eps[i] > 0.0)) throw ConfigError("sweep.eps entries must be positive");
    if (i && !(c.eps[i] < c.eps[i - 1])) throw ConfigError("sweep.eps must be strictly descending");
  }
  if (c.degrees.empty()) throw ConfigError("sweep.degrees is empty");
  for (int p : c.degrees)
    if (p < 0 || p > 3) throw ConfigError("sweep.degrees must be a subset of {0,1,2,3}");
  if (c.mode == SolveMode::LowestK && c.k < 1) throw ConfigError("solver.k must be positive");
  if (!(c.rank_tol > 0.0) || !(c.zero_tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (c.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (c.output_dir.empty()) throw ConfigError("output.dir is empty");
}

std::string canonical(const Config& c) {
  std::string s;
  auto line = [&](const std::string& k, const std::string& v) { s += k + "=" + v + "\n"; };
  auto list = [](const auto& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + num(v[i]);
    return out;
  };
  line("jobs", num(c.jobs));
  line("model.N", num(c.N));
  line("model.holonomy", list(c.holonomy));
  line("model.holonomy2", list(c.holonomy2));
  line("output.dir", c.output_dir);
  line("solver.k", num(c.k));
  line("solver.mode", c.mode == SolveMode::Full ? "full" : "lowest-k");
  line("sweep.degrees", list(c.degrees));
  line("sweep.eps", list(c.eps));
  line("tol.rank", num(c.rank_tol));
  line("tol.zero", num(c.zero_tol));
  return s;
}

std::string config_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ctspec
