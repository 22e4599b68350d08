#pragma once

#include <cstddef>
#include <functional>

namespace geokit {

/// Worker count: GEOKIT_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, count). Each index is visited exactly once; callers
/// write results into per-index slots and reduce afterwards in index order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> & body);

}  // namespace geokit
