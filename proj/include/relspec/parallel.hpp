#pragma once

#include <cstddef>
#include <functional>

namespace relspec {

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 means
/// default_threads()). Indices are handed out in contiguous blocks; callers
/// write results by index, so output never depends on the worker count. If
/// bodies throw, the exception of the smallest failing index is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace relspec
