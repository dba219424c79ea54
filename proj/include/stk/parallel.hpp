#pragma once

#include <cstdint>
#include <functional>

namespace stk {

// Global worker count for the compute loops (default: hardware concurrency).
void set_threads(int n);
int threads();

// Runs fn(begin, end) over disjoint chunks of [0, n). Each index is handled
// by exactly one worker, so writers never overlap.
void parallel_for(std::int64_t n,
                  const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace stk
