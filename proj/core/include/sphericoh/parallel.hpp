#pragma once

#include <cstddef>
#include <functional>

// Minimal deterministic work-splitting helper. Results must be written to
// disjoint per-index slots; reductions happen after the join so the outcome
// is independent of thread count.

namespace sphericoh::parallel {

/// Caps the number of worker threads (0 = hardware concurrency).
void set_max_threads(int n);
int max_threads();

/// Runs fn(i) for i in [0, n), split into contiguous blocks.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace sphericoh::parallel
