#pragma once

#include <cstddef>
#include <functional>

namespace se1p {

// Threads to use when a call passes 0: SE1P_THREADS, else 1.
int default_threads();

// Runs body(begin, end, worker) over contiguous chunks of [0, n). Chunking depends only on
// n and threads, so per-worker partial results can be reduced in a fixed order.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t, int)>& body);

int resolve_threads(int threads);

// Number of distinct worker ids parallel_for will use.
int worker_count(std::size_t n, int threads);

}  // namespace se1p
