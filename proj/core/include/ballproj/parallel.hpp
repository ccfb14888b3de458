#pragma once

#include <cstddef>
#include <functional>

namespace ballproj {

/// Process-wide worker count for the per-group loops (default 1). Results
/// are bit-identical for any setting: workers own disjoint contiguous
/// chunks and there are no shared reductions.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(begin, end) over a contiguous split of [0, count) across the
/// configured workers; runs inline when a single worker suffices.
void parallel_chunks(std::size_t count,
                     const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace ballproj
