#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "superell/fields.hpp"

namespace superell {

// Splits [0, n) into worker segments and runs fn(segment_index, begin, end) on
// each. Segment boundaries depend only on (n, workers), so any per-segment
// results combined in segment order are reproducible for a fixed worker count,
// and callers that reduce with commutative exact sums get identical output for
// every worker count.
void parallel_segments(u64 n, u32 workers, const std::function<void(u32, u64, u64)>& fn);

} // namespace superell
