#pragma once

#include <cstddef>
#include <functional>

namespace dqm {

/// Worker count for internal sweeps: DEFORMED_QM_THREADS if set to a
/// positive integer, otherwise the hardware concurrency.
unsigned thread_cap();

/// Runs body(i) for i in [0, n). Each index is visited exactly once and
/// results must be written to per-index slots, so output never depends on
/// the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dqm
