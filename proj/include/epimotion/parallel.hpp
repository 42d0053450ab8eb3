#ifndef EPIMOTION_PARALLEL_HPP
#define EPIMOTION_PARALLEL_HPP

#include <cstddef>
#include <thread>
#include <vector>

namespace epimotion {

// Static block partition of [0, n) over at most `threads` workers.
// Tasks must write to disjoint, preallocated slots; results are then
// independent of the worker count and of scheduling order.
template <typename Fn>
void parallelFor(std::size_t n, int threads, Fn&& fn) {
  if (n == 0) return;
  if (threads < 1) threads = 1;
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace epimotion

#endif
