#pragma once

#include <cstddef>
#include <functional>

namespace specmosaic {

/// Worker cap from SPECMOSAIC_THREADS; unset, empty or 0 means hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Each index is visited at most once. The
/// exception with the lowest index among those raised is rethrown once all
/// workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace specmosaic
