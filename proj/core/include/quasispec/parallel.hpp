// Deterministic data-parallel loop: static index partition, per-slot writes,
// results independent of the thread count by construction.
#pragma once

#include <cstddef>
#include <functional>

namespace quasispec {

// Global worker cap for parallel_for. 0 restores hardware_concurrency().
void set_thread_limit(unsigned n);
unsigned thread_limit();

// Runs fn(i) for i in [0, count). Indices are split into contiguous blocks,
// one per worker; fn must only write to slots owned by its own i (callers
// reduce sequentially afterwards). Nested calls run inline on the calling
// thread. The first exception (lowest block) is rethrown after join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace quasispec
