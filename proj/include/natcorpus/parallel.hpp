#pragma once

#include <cstddef>
#include <functional>

namespace natcorpus {

// Thread count from NATCORPUS_THREADS, else std::thread::hardware_concurrency,
// never less than 1.
std::size_t default_thread_count();

// Calls body(i) for every i in [0, count) using up to `threads` workers.
// Indices are handed out in contiguous chunks from a shared counter; callers
// must only write to state owned by index i. If bodies throw, the exception
// of the lowest failing index is rethrown after all workers join; chunks are
// claimed in increasing order, so that index does not depend on `threads`.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace natcorpus
