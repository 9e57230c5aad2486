#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>

namespace hd {

// Serial is the reference path; parallel runs the same kernel under OpenMP.
enum class Exec { serial, parallel };

int worker_count();

// Calls f(i) for i in [0, n). Results must be written to slot i so the
// outcome does not depend on scheduling. The first exception thrown by any
// iteration is rethrown after the loop.
template <class F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr failure;
  const auto m = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < m; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(hd_for_each_index)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace hd
