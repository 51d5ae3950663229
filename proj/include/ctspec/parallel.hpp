#pragma once

#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ctspec {

// Worker count; JOBS in the environment wins over the configured value.
int resolve_jobs(int configured);
void set_jobs(int jobs);
int current_jobs();

// Runs f(i) for i in [0, n) over the OpenMP pool. The first exception is
// rethrown on the calling thread. Callers write results into slot i, so
// aggregation stays in index order.
template <class F>
void parallel_for(int n, F&& f) {
  std::exception_ptr err;
  std::mutex m;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      f(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(m);
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

template <class F>
void serial_for(int n, F&& f) {
  for (int i = 0; i < n; ++i) f(i);
}

}  // namespace ctspec
