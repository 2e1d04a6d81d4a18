#pragma once

#include <cstddef>
#include <functional>

namespace canonical_tf {

/// Worker count: CANONICAL_TF_THREADS if set and positive, otherwise the
/// hardware concurrency.
std::size_t thread_count();

/// Calls body(i) for i in [0, n). Each index is handled by exactly one worker,
/// so results written per index do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace canonical_tf
