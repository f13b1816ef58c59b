#pragma once

#include <chrono>
#include <cstdint>
#include <functional>

namespace cubeshift {

// Concurrency and memory knobs, read once from CUBESHIFT_THREADS and
// CUBESHIFT_MEM_MB. Results are independent of the thread count: work is cut
// on a fixed chunk grid and partial results merge in chunk order with exact
// (integer/fixed-point) arithmetic.
int thread_budget();
uint64_t mem_budget_bytes();

// Runs fn(chunk_begin, chunk_end) over [0, n) on the fixed grid; merge(i) is
// called in ascending chunk order after all chunks complete.
void chunked_run(uint64_t n, const std::function<void(int, uint64_t, uint64_t)>& fn,
                 int* out_chunks);

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

}  // namespace cubeshift
