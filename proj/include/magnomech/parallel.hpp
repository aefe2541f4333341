#pragma once

#include <cstddef>
#include <functional>

namespace magnomech {

/// Worker count: MAGNOMECH_THREADS if set and positive, else all cores.
unsigned thread_count();

/// Calls body(i) for i in [0, n) on up to `threads` workers. Each index is
/// visited exactly once; the first exception (lowest index) is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace magnomech
