#pragma once

#include <cstddef>
#include <functional>

namespace ctop {

// Worker count used by parallelFor (default: CTOP_THREADS or 1).
void setThreadCount(int n);
int threadCount();

// Runs body(i) for i in [0, n). Each index writes only its own result slot, so
// output never depends on scheduling. The first exception is rethrown.
void parallelFor(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ctop
