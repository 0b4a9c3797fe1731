#pragma once

#include <cstddef>
#include <functional>

namespace heatflow {

// Worker count: HEATFLOW_THREADS if set (>= 1), else the hardware concurrency.
int thread_count();

// Runs f(0..n-1), possibly concurrently. Each index writes only its own
// output slot, so results do not depend on scheduling. The first exception
// (lowest index) is rethrown after all workers finish. Nested calls run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &f);

} // namespace heatflow
