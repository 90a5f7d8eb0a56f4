#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ivm {

/// Runs f(i) for i in [0, n) on up to `jobs` threads; rethrows the first
/// exception after all workers finish.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < std::min<int>(jobs, static_cast<int>(n)); ++t)
      pool.emplace_back([&] {
        try {
          for (std::size_t i = next++; i < n; i = next++) f(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!err) err = std::current_exception();
          next = n;
        }
      });
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace ivm
