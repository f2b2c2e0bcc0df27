#pragma once

#include <exception>
#include <mutex>

#include <omp.h>

namespace hyperplane {

// Number of worker threads for replica loops; 0 means the OpenMP default.
inline int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

// Runs body(k) for k = 0..count-1. Each replica writes only its own output slot and
// draws from its own stream, so results do not depend on the thread count.
template <class Body>
void parallel_for_replicas(int count, int threads, Body&& body) {
  std::exception_ptr error;
  std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(threads))
  for (int k = 0; k < count; ++k) {
    try {
      body(k);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

// Serial reference for parallel_for_replicas.
template <class Body>
void serial_for_replicas(int count, Body&& body) {
  for (int k = 0; k < count; ++k) body(k);
}

}  // namespace hyperplane
