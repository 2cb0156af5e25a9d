#pragma once

#include <cstddef>
#include <functional>

namespace tsqrt {

// Worker cap from TSQRT_THREADS (0 or unset = hardware concurrency).
std::size_t worker_count();

// Runs fn(i) for i in [0, count). Work is split across threads when more than
// one worker is available; exceptions are re-thrown for the lowest failing
// index so error reporting stays deterministic. Callers that reduce results
// must accumulate per-index values and sum them in index order afterwards.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace tsqrt
