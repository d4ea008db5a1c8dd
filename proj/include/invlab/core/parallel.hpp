#pragma once

#include <cstddef>
#include <functional>

namespace invlab {

/// Worker count used by parallel loops. Defaults to INVLAB_THREADS when set, else 1.
int thread_count();
void set_thread_count(int n);

/// Runs body(i) for i in [0, count) on thread_count() workers with a static
/// interleaved schedule. Each index is written by exactly one worker, so
/// results are independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace invlab
