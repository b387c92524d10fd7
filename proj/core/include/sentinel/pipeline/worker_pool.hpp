#pragma once

#include <cstddef>
#include <functional>

namespace sentinel::pipeline {

/// Runs fn(0) ... fn(n - 1) on up to `jobs` threads (jobs <= 1 runs inline).
/// Each index is handled exactly once; callers write results into slot i, so
/// output order never depends on scheduling. The first exception thrown by any
/// task is rethrown after all workers have stopped.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace sentinel::pipeline
