#pragma once

#include <cstddef>
#include <exception>
#include <limits>

namespace subfv {

/// How replicate loops are executed. Results never depend on the choice.
enum class Execution { serial, parallel };

/// Calls fn(k) for k = 0..count-1.
///
/// The parallel path distributes indices over OpenMP threads. An exception
/// thrown by any call is rethrown after the loop; when several calls throw,
/// the one with the lowest index wins so the reported error is deterministic.
template <class Fn>
void for_each_replicate(std::size_t count, Fn&& fn, Execution exec = Execution::parallel) {
  if (exec == Execution::serial) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::exception_ptr first_error;
  std::size_t first_index = std::numeric_limits<std::size_t>::max();
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      fn(k);
    } catch (...) {
#pragma omp critical(subfv_replicate_error)
      {
        if (k < first_index) {
          first_index = k;
          first_error = std::current_exception();
        }
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace subfv
