#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace loadshift {

// Runs fn(i) for every i in [0, n) on up to `workers` threads. Each call must
// only touch state owned by its index, so results are identical no matter how
// the indices are interleaved. The first exception thrown by any call is
// rethrown on the calling thread after all workers join.
template <typename Fn>
void parallel_for_index(std::size_t n, unsigned workers, Fn&& fn) {
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned thread_count = static_cast<unsigned>(
      std::min<std::size_t>(workers, n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(thread_count);
  for (unsigned w = 0; w < thread_count; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace loadshift
