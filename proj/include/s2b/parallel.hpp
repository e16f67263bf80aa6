#pragma once

#include <functional>

namespace s2b {

/// Number of worker threads: min(hardware, S2B_THREADS) with S2B_THREADS
/// read once from the environment.
int worker_threads();

/// Static-chunked parallel loop over [0, count). The body must only write
/// to per-index slots; results are therefore identical for any thread count.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace s2b
