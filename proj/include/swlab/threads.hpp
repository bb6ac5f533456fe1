#pragma once

#include <cstdint>
#include <functional>

namespace swlab {

// Worker count from SWLAB_THREADS, clamped to [1, hardware_concurrency];
// defaults to 1 (fully deterministic serial execution).
int worker_thread_count();

// Runs fn(i) for every i in [0, n). Work is claimed by atomic index, so fn
// must make its result depend only on i (per-index RNG streams etc.), never
// on execution order.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

}  // namespace swlab
