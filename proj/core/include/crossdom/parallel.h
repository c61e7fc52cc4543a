#ifndef CROSSDOM_PARALLEL_H_
#define CROSSDOM_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace crossdom {

inline constexpr const char* kThreadsEnvVar = "AMR_CROSSDOM_THREADS";

// Hardware concurrency, capped by AMR_CROSSDOM_THREADS when it holds a
// positive integer. Never less than 1.
std::size_t DefaultThreadCount();

// Runs body(i) for i in [0, n) on up to `threads` workers (0 = default).
// Callers write results into slot i so that output order is fixed. The
// first exception thrown by any body is rethrown after all workers stop.
void ParallelFor(std::size_t n, std::size_t threads,
                 const std::function<void(std::size_t)>& body);

}  // namespace crossdom

#endif  // CROSSDOM_PARALLEL_H_
