#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace oforge {

// Worker cap: OPERAD_FORGE_THREADS when set and positive, else hardware.
inline int thread_count() {
  if (const char* env = std::getenv("OPERAD_FORGE_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Index-parallel map. Results must be written to slot i only, so the merge
// order (and therefore all downstream output) is deterministic.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  int workers = thread_count();
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t per = (n + static_cast<std::size_t>(workers) - 1) /
                    static_cast<std::size_t>(workers);
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = static_cast<std::size_t>(w) * per;
    std::size_t hi = lo + per < n ? lo + per : n;
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &f]() {
      for (std::size_t i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace oforge
