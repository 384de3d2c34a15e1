#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace spinglass {

/// Worker count from SPINGLASS_WORKERS, else the hardware concurrency (at least 1).
int worker_count();

/// Runs body(i) for i in [0, n) on up to `workers` threads.
///
/// Indices are claimed dynamically, so callers must write results into
/// per-index slots; the first exception thrown by any body is rethrown.
template <class Body>
void parallel_for(std::size_t n, Body&& body, int workers = worker_count()) {
  const auto threads = static_cast<std::size_t>(std::max(1, workers));
  if (threads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(std::min(threads, n) - 1);
  for (std::size_t t = 1; t < std::min(threads, n); ++t) pool.emplace_back(run);
  run();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

/// Sum by a fixed binary tree over index ranges; the result depends only on the values.
double pairwise_sum(std::span<const double> values) noexcept;

}  // namespace spinglass
