#pragma once

#include <cstddef>
#include <functional>

namespace ifacediv {

/// Number of worker threads: hardware concurrency unless the
/// IFACEDIV_THREADS environment variable overrides it. Always >= 1.
/// Results of parallel computations never depend on this value.
std::size_t worker_count();

/// Runs fn(0) .. fn(n_tasks-1) across worker_count() threads.
/// Task results must be written to disjoint storage; no ordering between
/// tasks is guaranteed, so callers must not depend on execution order.
void parallel_for(std::size_t n_tasks, const std::function<void(std::size_t)>& fn);

}  // namespace ifacediv
