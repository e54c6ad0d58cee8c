#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "mpdtsp/detail/text.hpp"

namespace mpdtsp {

// MPDTSP_THREADS if set to a positive integer, else the hardware count.
inline int worker_count() {
  if (const char* env = std::getenv("MPDTSP_THREADS")) {
    if (const auto v = detail::to_integer(env); v && *v > 0) return static_cast<int>(*v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(k) for k in [0, count). Work is claimed dynamically; callers
// write results into per-index slots so the outcome never depends on timing.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count < 2) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        body(k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < std::min(workers, count); ++w) pool.emplace_back(run);
  run();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace mpdtsp
