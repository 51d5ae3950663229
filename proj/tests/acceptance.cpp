// Runs the fourteen acceptance criteria and prints one PASS/FAIL line per criterion.
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ctspec/suites.hpp"

using namespace ctspec;

namespace {

struct Criterion {
  int id;
  const char* title;
  std::function<SuiteResult(const SuiteParams&)> run;
};

void print_metrics(const SuiteResult& r) {
  for (const auto& [k, v] : r.metrics) {
    bool failed = false;
    for (const auto& f : r.failed) failed |= f == k;
    std::printf("    %-40s %.6g%s\n", k.c_str(), v, failed ? "  <-- out of bound" : "");
  }
  for (const auto& n : r.notes) std::printf("    note: %s\n", n.c_str());
}

}  // namespace

int main() {
  const SuiteParams params;  // acceptance wording, N = 8, twists as in the criteria
  const std::vector<Criterion> criteria{
      {1, "exact algebra", suite_exact_algebra},
      {2, "cohomology", suite_cohomology},
      {3, "filtration", suite_filtration},
      {4, "extension orders", suite_extension},
      {5, "effective normal", suite_effective_normal},
      {6, "spectral convergence", suite_spectral_convergence},
      {7, "Branson identity", suite_branson},
      {8, "zeta scaling", suite_zeta_scaling},
      {9, "regime fits", suite_regime},
      {10, "relative torsion", suite_torsion},
      {11, "Kitaoka", suite_kitaoka},
      {12, "relative rho", suite_eta},
      {13, "Heisenberg model", suite_heis},
      {14, "Tanno", suite_tanno},
  };

  const SuiteResult geo = suite_geometry(params);
  std::printf("model geometry: %s\n", geo.pass ? "PASS" : "FAIL");
  print_metrics(geo);

  std::vector<std::string> lines;
  int failures = 0;
  for (const Criterion& c : criteria) {
    SuiteResult r{c.title};
    bool ok = false;
    try {
      r = c.run(params);
      ok = r.pass;
    } catch (const std::exception& e) {
      r.notes.push_back(std::string("exception: ") + e.what());
    }
    failures += !ok;
    std::printf("\n[%s] %.1f s\n", c.title, r.seconds);
    print_metrics(r);
    char line[160];
    std::snprintf(line, sizeof line, "criterion %d (%s): %s", c.id, c.title, ok ? "PASS" : "FAIL");
    lines.emplace_back(line);
    std::printf("%s\n", line);
    std::fflush(stdout);
  }
  std::printf("\nsummary\n");
  for (const auto& l : lines) std::printf("%s\n", l.c_str());
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
