#pragma once

#include <cstddef>
#include <functional>

namespace caplab {

/// Worker cap: CAPLAB_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

/// Runs task(i) for i in [0, count) on up to worker_count() threads.
/// Callers write results by index, so output order never depends on timing.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace caplab
