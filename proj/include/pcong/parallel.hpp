#pragma once

#include <cstddef>
#include <functional>

namespace pcong {

/// Process-wide worker count used by the series kernels and range scans. Defaults to 1.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Splits [0, n) into at most `workers` contiguous chunks (aligned to `align`) and runs
/// fn(lo, hi) on each; returns when all chunks are done. Runs inline when one worker suffices.
void parallel_ranges(std::size_t n, std::size_t align, unsigned workers,
                     const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace pcong
