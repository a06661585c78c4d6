#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ghshift {

/// Worker count: hardware concurrency, capped by GHSHIFT_THREADS when set.
int worker_count();

namespace detail {
inline thread_local bool in_parallel_worker = false;
}

/// Calls fn(i) for i in [0, n) on up to worker_count() threads. Work is split
/// into contiguous blocks, so results written by index are deterministic. The
/// first exception thrown by any call is rethrown after all workers join.
/// Nested calls from inside a worker run serially.
template <class F>
void parallel_for(std::size_t n, F&& fn) {
  const std::size_t workers =
      detail::in_parallel_worker
          ? 1
          : std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first;
  std::mutex mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      pool.emplace_back([&, begin, end] {
        detail::in_parallel_worker = true;
        try {
          for (std::size_t i = begin; i < end; ++i) fn(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!first) first = std::current_exception();
        }
      });
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace ghshift
