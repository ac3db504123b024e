#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace spinsim::util {

// Worker count: SPINSIM_THREADS env var when set, hardware concurrency
// otherwise, always >= 1.
int thread_count();

// Deterministic parallel map: fn(i) for i in [0, n). Each index is evaluated
// exactly once and writes only its own output slot, so results are identical
// to the serial loop regardless of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// full-precision float formatting for CSV (17 significant digits)
std::string format_g17(double v);

}  // namespace spinsim::util
