#pragma once

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cmnorm {

inline int hardware_jobs() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Index-parallel driver. jobs == 1 runs the plain serial loop and is the
// reference path the parallel kernels are tested against; jobs > 1 fans out
// over OpenMP (when compiled in). Workers write to disjoint slots, so the
// result is identical either way. Exceptions may not cross an OpenMP region;
// the first one is captured and rethrown on the calling thread.
template <typename Fn>
void for_range(long long n, int jobs, Fn&& fn) {
  if (jobs <= 0) jobs = hardware_jobs();
  if (jobs == 1) {
    for (long long i = 0; i < n; ++i) fn(i);
    return;
  }
#ifdef _OPENMP
  std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (long long i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
#pragma omp critical(cmnorm_for_range_error)
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
#else
  for (long long i = 0; i < n; ++i) fn(i);
#endif
}

}  // namespace cmnorm
