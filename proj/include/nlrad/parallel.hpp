#pragma once

#include <cstddef>
#include <functional>

namespace nlrad {

/// Global worker count for pairwise scans and experiment pools.
/// 0 restores the hardware default. Thread-count changes must never change
/// results: parallel sections reduce integers or write to disjoint
/// preallocated slots only.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Splits [begin, end) into contiguous chunks and runs body(lo, hi) on each,
/// possibly concurrently. Blocks until all chunks are done.
void parallel_chunks(std::size_t begin, std::size_t end,
                     const std::function<void(std::size_t, std::size_t)>& body);

/// Runs body(i) for i in [0, count), possibly concurrently.
void parallel_index(std::size_t count,
                    const std::function<void(std::size_t)>& body);

}  // namespace nlrad
