#pragma once

#include <cstddef>
#include <functional>

namespace distprof {

// Worker count: DISTPROF_THREADS if set to a positive integer, otherwise
// std::thread::hardware_concurrency().
unsigned thread_count();

// Calls body(i) for every i in [0, count). Iterations are distributed over
// thread_count() workers; calls made from inside a worker run serially.
// Bodies must write only to slots owned by their index, which makes results
// independent of the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace distprof
