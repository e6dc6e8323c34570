#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace netforge::detail {

/// Runs fn(begin, end) over contiguous chunks of [0, n) on up to `jobs` threads.
template <class Fn>
void parallel_chunks(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || n < 2) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t t = std::min<std::size_t>(jobs, n);
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex mu;
  for (std::size_t w = 0; w < t; ++w) {
    const std::size_t b = n * w / t, e = n * (w + 1) / t;
    pool.emplace_back([&, b, e] {
      try {
        fn(b, e);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace netforge::detail
