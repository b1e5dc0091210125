#ifndef RHD_PARALLEL_HPP
#define RHD_PARALLEL_HPP

#include <cstdlib>
#include <thread>
#include <vector>

namespace rhd {

// Worker cap from SOLVER_THREADS, else hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("SOLVER_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? (int)hc : 1;
}

// Static range partition; workers write disjoint indices, so results are
// independent of the thread count.
template <class F>
void parallel_for(int n, F&& f) {
  const int nw = std::min(worker_count(), n);
  if (nw <= 1 || n < 256) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nw);
  const int chunk = (n + nw - 1) / nw;
  for (int w = 0; w < nw; ++w) {
    const int lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &f] {
      for (int i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace rhd

#endif
