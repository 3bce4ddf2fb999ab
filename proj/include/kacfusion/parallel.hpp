#pragma once

#include <cstddef>
#include <functional>

namespace kacfusion {

/// Worker count: hardware concurrency, capped by the KACFUSION_THREADS
/// environment variable when it holds a positive integer.
unsigned thread_count();

/// Runs body(i) for i in [0, n), striding indices across workers.  The
/// first exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace kacfusion
