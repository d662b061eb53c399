#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace specdens {

// Runs fn(i) for i in [0, n). Results must be written to pre-allocated,
// disjoint slots so the outcome is independent of the worker count.
inline void parallel_for(int jobs, std::size_t n,
                         const std::function<void(std::size_t)>& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t nthreads = std::min<std::size_t>(jobs, n);
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    workers.emplace_back([&, t]() {
      try {
        for (std::size_t i = t; i < n; i += nthreads) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace specdens
