#pragma once

#include <cstddef>
#include <functional>

namespace holoschwarz {

/// Worker count from HOLOSCHWARZ_WORKERS, else the hardware concurrency (at least 1).
int default_workers();

/// Calls fn(i) for i in [0, n) on up to `workers` threads (0 = default_workers()).
/// Indices are handed out in contiguous blocks; callers write results by index so
/// the outcome does not depend on the thread count. The first exception thrown by
/// fn is rethrown after all workers stop.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace holoschwarz
