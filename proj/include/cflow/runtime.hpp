#pragma once

#include <functional>

namespace cflow::runtime {

// Thread budget for embarrassingly parallel batches (independent solves,
// oracle diagonalizations). COUPLING_FLOW_THREADS caps it; defaults to the
// hardware concurrency. Always >= 1.
int max_threads();

// Runs fn(0..count-1), splitting across at most max_threads() workers.
// Deterministic: each index does the same work regardless of scheduling;
// callers write results into index-addressed slots.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace cflow::runtime
