#pragma once

#include <exception>
#include <mutex>

namespace mmskit {

/// Parallel kernels keep a plain serial loop as the reference path; tests
/// check both produce identical results.
enum class Execution { Serial, Parallel };

/// Runs body(k) for k in [0, count). Under Parallel the iterations are
/// spread over OpenMP threads; the first exception thrown by any iteration
/// is rethrown on the calling thread after the loop.
template <class Body>
void for_each_index(long count, Execution exec, Body&& body) {
  if (exec == Execution::Serial) {
    for (long k = 0; k < count; ++k) body(k);
    return;
  }
  std::exception_ptr failure;
  std::mutex guard;
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < count; ++k) {
    try {
      body(k);
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace mmskit
