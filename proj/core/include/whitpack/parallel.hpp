#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace whitpack {

// Static block partition of [0, n) across worker threads. Each worker gets a
// contiguous index range and must write only its own output slots; with that
// discipline results are bitwise independent of the thread count.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t want = threads > 0 ? static_cast<std::size_t>(threads)
                                 : (hw ? hw : 1);
  want = std::min(want, n);
  if (want <= 1) {
    fn(0, n);
    return;
  }
  const std::size_t chunk = (n + want - 1) / want;
  std::vector<std::thread> pool;
  pool.reserve(want);
  for (std::size_t t = 0; t < want; ++t) {
    const std::size_t a = t * chunk;
    const std::size_t b = std::min(n, a + chunk);
    if (a >= b) break;
    pool.emplace_back(fn, a, b);
  }
  for (auto& th : pool) th.join();
}

}  // namespace whitpack
