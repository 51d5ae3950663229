#include "ctspec/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ctspec {

int resolve_jobs(int configured) {
  if (const char* env = std::getenv("JOBS")) {
    try {
      const int j = std::stoi(env);
      if (j > 0) return j;
    } catch (...) {
    }
  }
  return configured > 0 ? configured : 1;
}

void set_jobs(int jobs) {
#ifdef _OPENMP
  omp_set_num_threads(jobs > 0 ? jobs : 1);
#else
  (void)jobs;
#endif
}

int current_jobs() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace ctspec
