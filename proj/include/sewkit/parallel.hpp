#pragma once

#include <cstddef>
#include <functional>

namespace sewkit {

// Worker count: SEWKIT_THREADS when set to a positive integer, otherwise the
// machine's hardware concurrency.
std::size_t thread_count();

// Overrides the worker count for this process; 0 restores the default.
void set_thread_count(std::size_t n);

// Runs body(i) for every i in [begin, end). Iterations must be independent;
// the first exception thrown by any iteration is rethrown on the caller.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace sewkit
