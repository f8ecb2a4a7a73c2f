#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace wlvc {

inline std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs body(begin, end) over [0, n) split into contiguous chunks, one per
// worker. Results must be written to disjoint slots so the output is
// independent of the schedule. The first exception thrown by any worker is
// rethrown on the calling thread.
inline void parallel_for(std::size_t n, std::size_t threads,
                         const std::function<void(std::size_t, std::size_t)>& body) {
  threads = resolve_threads(threads);
  if (n == 0) return;
  if (threads <= 1 || n == 1) {
    body(0, n);
    return;
  }
  if (threads > n) threads = n;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t b = t * chunk;
    const std::size_t e = b + chunk < n ? b + chunk : n;
    if (b >= e) break;
    pool.emplace_back([&, t, b, e] {
      try {
        body(b, e);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errs)
    if (err) std::rethrow_exception(err);
}

}  // namespace wlvc
