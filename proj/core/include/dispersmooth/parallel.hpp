#pragma once

#include <cstddef>
#include <functional>

namespace dispersmooth {

/// Worker count: hardware concurrency, capped by DISPERSMOOTH_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads.
/// Items are handed out in index order; the first exception is rethrown
/// after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace dispersmooth
