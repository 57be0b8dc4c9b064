#pragma once

#include <functional>

namespace ribbonpatch {

/// Worker count: RIBBONPATCH_THREADS if set to a positive integer, otherwise
/// the hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n). Each index is handled by exactly one worker,
/// so results written per index are independent of scheduling.
void parallel_for(int n, const std::function<void(int)> &body);

} // namespace ribbonpatch
