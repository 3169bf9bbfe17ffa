#pragma once

#include <cstddef>
#include <functional>

namespace specpoint {

/// Worker count: SPECPOINT_THREADS if set to a positive integer, else hardware concurrency.
unsigned thread_count();

/// Calls fn(i) for i in [0, n) on up to thread_count() threads. Indices are striped
/// across workers; callers store results per index, so any reduction done afterwards
/// is independent of scheduling. The first exception thrown by fn is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace specpoint
