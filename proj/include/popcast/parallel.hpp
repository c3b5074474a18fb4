#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace popcast {

// Index-sliced parallel loop. Each index writes only its own output slot, so
// results are identical for any job count.
template <typename Fn>
void parallel_for(size_t n, size_t jobs, Fn&& fn) {
  if (jobs == 0) jobs = std::thread::hardware_concurrency();
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  jobs = std::min(jobs, n);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      for (size_t i = w; i < n; i += jobs) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace popcast
