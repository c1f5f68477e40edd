#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace eink {

/// Worker cap: EINK_THREADS if set (clamped to >= 1), else hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0, count) on up to worker_count() threads. Chunk layout is a
/// fixed function of count alone, so writes indexed by i land identically no matter
/// how many workers run.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Chunked variant: fn(begin, end) per contiguous block; use with per-point workspaces.
void parallel_for_chunked(std::size_t count,
                          const std::function<void(std::size_t, std::size_t)>& fn);

/// Pairwise (cascade) summation: deterministic order independent of worker count,
/// error growth O(log n) ulps.
double pairwise_sum(std::span<const double> values);

}  // namespace eink
