#pragma once

#include <cstdint>
#include <functional>

namespace cyclewalk {

// Number of worker threads used by grid sweeps: min(hardware, CYCLE_WALK_THREADS).
// The stepping kernel itself stays serial for bitwise determinism.
int worker_threads();

// Deterministic block-parallel loop: fn(begin, end) over disjoint ranges of
// [0, n). Falls back to a single call when n is small or one worker is
// configured.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace cyclewalk
