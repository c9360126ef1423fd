#pragma once

#include <cstddef>
#include <functional>

namespace maxstab {

/// Worker count: hardware concurrency, capped by MAXSTAB_THREADS when set (>= 1).
unsigned worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads.
/// Exceptions are rethrown on the calling thread (the first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace maxstab
