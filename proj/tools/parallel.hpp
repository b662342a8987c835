// parallel.hpp — deterministic index-parallel loop for independent CLI work items.
// Thread count is min(hardware, POINTER_SIM_THREADS, job count); results must be
// written to per-index slots so the assembled output is order-independent.
#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace psim::cli {

inline int thread_budget(int jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  int limit = hw ? static_cast<int>(hw) : 1;
  if (const char* env = std::getenv("POINTER_SIM_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1 && cap < limit) limit = cap;
  }
  return std::max(1, std::min(limit, jobs));
}

inline void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = thread_budget(n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      try {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace psim::cli
