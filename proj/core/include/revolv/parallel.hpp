#pragma once

#include <cstddef>
#include <functional>

namespace revolv {

/// Number of worker threads used for sweeps: the hardware concurrency,
/// capped by the REVOLV_THREADS environment variable when it is set to a
/// positive integer.
unsigned worker_count();

/// Calls body(i) for every i in [0, count), spread over worker_count()
/// threads. The first exception thrown by any call is rethrown after all
/// workers have joined.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace revolv
