#pragma once

#include <cstddef>
#include <functional>

namespace qstab {

/// Runs fn(0..count-1) across `threads` workers (serial when threads <= 1).
/// Callers must make fn(i) write only to slot i of preallocated output, so
/// the result never depends on the worker count. The first exception thrown
/// by any fn is rethrown after all workers join.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace qstab
