#pragma once

#include <cstddef>
#include <functional>

namespace lensdepth {

/// Process-wide worker count used by parallel_for. 0 means hardware count.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls fn(i) for every i in [0, n). Each index must write only its own
/// outputs; results are then independent of the schedule. The first
/// exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace lensdepth
