#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace dcomp {

/// Execution policy for the data-parallel kernels. `Serial` runs the same
/// loop body on one thread and is what the reference comparisons use.
enum class Exec { Serial, Parallel };

/// Runs body(i) for i in [0, n). Iterations must be independent. The first
/// exception thrown by any iteration is rethrown on the calling thread.
template <class Body>
void parallel_for(Exec exec, std::ptrdiff_t n, Body&& body) {
#if defined(DCOMP_HAVE_OPENMP)
  if (exec == Exec::Parallel) {
    std::exception_ptr failure;
    std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    return;
  }
#else
  (void)exec;
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

}  // namespace dcomp
