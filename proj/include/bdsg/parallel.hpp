#pragma once

#include <cstddef>
#include <functional>

namespace bdsg {

/// Caps the worker thread count for all parallel loops. n <= 0 restores the
/// hardware default.
void set_max_threads(int n);

int max_threads();

/// Runs fn(i) for i in [0, n), possibly on several threads. Iterations must
/// write to disjoint state only; outputs are then independent of the thread
/// count. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace bdsg
