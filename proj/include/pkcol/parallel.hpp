#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pkcol {

/// Calls body(i) for every i in [0, count) on up to `threads` workers.
/// Work is split into contiguous blocks; callers write results by index, so
/// output never depends on scheduling. The first exception is rethrown.
template <typename Body>
void parallel_for(std::int64_t count, int threads, Body&& body) {
  if (count <= 0) return;
  const auto workers = static_cast<std::int64_t>(std::clamp<std::int64_t>(threads, 1, count));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (std::int64_t w = 0; w < workers; ++w) {
    const std::int64_t begin = count * w / workers;
    const std::int64_t end = count * (w + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::int64_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace pkcol
