#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>

namespace chaoskit {

// Every data-parallel kernel takes one of these. kSerial is the reference
// path kept for testing; both paths must produce identical results.
enum class Exec { kSerial, kParallel };

// Runs body(i) for i in [0, n). Each index must write only to its own output
// slot. The first exception thrown (lowest index under kSerial, any index
// under kParallel) is rethrown after the loop.
template <class Body>
void for_each_index(std::size_t n, Exec exec, Body&& body) {
  if (exec == Exec::kSerial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace chaoskit
