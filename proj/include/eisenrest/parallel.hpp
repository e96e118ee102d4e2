#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace eisenrest {

/// Worker count for the data-parallel kernels. threads <= 1 runs the plain
/// serial loop, which is the reference path.
struct Exec {
  int threads = 1;
};

/// Calls f(i) for i in [0, n). Each f(i) must write only its own slot, so the
/// caller can reduce afterwards in index order and get the same bits for any
/// thread count. The first exception thrown by any f(i) is rethrown.
template <class F>
void parallel_for(std::size_t n, const Exec& exec, F&& f) {
  if (exec.threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for num_threads(exec.threads) schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// Value of EISENREST_THREADS (a positive integer), or 1 when unset.
int threads_from_env();

}  // namespace eisenrest
