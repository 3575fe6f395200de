#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace tsgc {

// Worker cap for internal parallelism. Reads TSGC_THREADS on every call so
// tests can flip it between runs; 0, unset or garbage means auto.
int thread_budget();

namespace detail {

// Splits [0, n) into contiguous chunks, one worker per chunk. Workers must
// write disjoint output ranges; results are then identical for any budget.
template <typename Fn>
void parallel_chunks(std::size_t n, Fn&& fn) {
  if (n == 0) return;
  std::size_t workers = static_cast<std::size_t>(thread_budget());
  workers = std::min(workers, n);
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail
}  // namespace tsgc
