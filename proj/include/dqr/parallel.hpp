#pragma once

#include <functional>

namespace dqr {

// Runs fn(0..n-1) on up to `threads` workers over disjoint index blocks.
// Tasks must write disjoint state; with per-task RNG streams the result is
// identical to the serial loop whatever the schedule. threads <= 1 runs
// inline. The first worker exception, if any, is rethrown on the caller.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace dqr
