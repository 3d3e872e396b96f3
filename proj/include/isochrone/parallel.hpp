#pragma once

#include <cstddef>
#include <functional>

namespace isochrone {

// Worker count: ISOCHRONE_MAX_THREADS if set to a positive integer, else the
// hardware concurrency.
unsigned max_threads();

// Runs fn(0..n-1) on up to max_threads() threads. If any call throws, the
// exception of the lowest failing index is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace isochrone
