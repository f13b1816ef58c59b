#include "cubeshift/util.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace cubeshift {

int thread_budget() {
  static int cached = [] {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* e = std::getenv("CUBESHIFT_THREADS")) {
      long v = std::strtol(e, nullptr, 10);
      if (v >= 1) return (int)std::min<long>(v, 256);
    }
    return (int)hw;
  }();
  return cached;
}

uint64_t mem_budget_bytes() {
  static uint64_t cached = [] {
    uint64_t mb = 3072;
    if (const char* e = std::getenv("CUBESHIFT_MEM_MB")) {
      long v = std::strtol(e, nullptr, 10);
      if (v >= 64) mb = (uint64_t)v;
    }
    return mb * 1024 * 1024;
  }();
  return cached;
}

void chunked_run(uint64_t n, const std::function<void(int, uint64_t, uint64_t)>& fn,
                 int* out_chunks) {
  // Fixed chunk grid independent of the worker count, so merges happen in a
  // reproducible order no matter how many threads execute them.
  int workers = thread_budget();
  int chunks = workers == 1 ? 1 : workers * 8;
  uint64_t step = (n + chunks - 1) / std::max(1, chunks);
  if (step == 0) step = 1;
  std::vector<std::pair<uint64_t, uint64_t>> grid;
  for (uint64_t b = 0; b < n; b += step) grid.emplace_back(b, std::min(n, b + step));
  if (out_chunks) *out_chunks = (int)grid.size();
  if (workers == 1 || grid.size() <= 1) {
    for (size_t i = 0; i < grid.size(); ++i) fn((int)i, grid[i].first, grid[i].second);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= grid.size()) return;
        fn((int)i, grid[i].first, grid[i].second);
      }
    });
  for (auto& t : pool) t.join();
}

}  // namespace cubeshift
