#pragma once

#include <cstddef>
#include <functional>

namespace champ {

// Worker count: CHAMP_THREADS when set (clamped to >= 1), else hardware
// concurrency.
int thread_count();

// Runs fn(0..n-1) across workers. Work is split into contiguous index blocks;
// callers own any ordering of results (index-addressed writes are safe).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace champ
