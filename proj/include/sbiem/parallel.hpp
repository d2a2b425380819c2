#pragma once

#include <cstddef>
#include <functional>

namespace sbiem {

/// Worker count from SBIEM_THREADS, defaulting to hardware concurrency.
unsigned default_thread_count();

/// Runs body(begin, end) over [0, count) in contiguous chunks, one per
/// worker, and joins before returning.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace sbiem
