#ifndef TREEMBED_PARALLEL_HPP
#define TREEMBED_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace treembed {

/// Worker count: hardware concurrency, capped by TREEMBED_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Callers write
/// results into slot i of a preallocated buffer, so output order never
/// depends on scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace treembed

#endif  // TREEMBED_PARALLEL_HPP
