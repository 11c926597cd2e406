#pragma once

#include <cstddef>
#include <functional>

namespace fsl {

// Number of workers for sweeps: FSLB_THREADS if set and > 0, else hardware
// concurrency (at least 1).
std::size_t worker_count();

// Runs body(i) for i in [0, count). Iterations must be independent; results
// should be written to per-index slots so the outcome does not depend on
// scheduling. Exceptions from any iteration are rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fsl
