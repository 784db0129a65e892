#pragma once

#include <cstddef>
#include <functional>

namespace utm {

/// Worker count: UTM_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Calls body(i) for i in [0, count), split into contiguous blocks across threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace utm
