#pragma once
#include <thread>
#include <vector>

namespace nssc {

// Static block partition of [0, n). Each worker writes only its own indices,
// so results are identical at any worker count; reductions over the produced
// slots must be done afterwards in index order.
template <class F>
void parallel_for(int n, int workers, F&& body) {
  if (n <= 0) return;
  if (workers <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  if (workers > n) workers = n;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace nssc
