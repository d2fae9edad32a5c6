#pragma once

#include <cstddef>
#include <functional>

namespace citerank {

// Splits [0, n) into `threads` contiguous chunks and runs `body(begin, end)`
// on each. Chunk boundaries depend only on n and threads. threads <= 1 runs
// inline.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

// Number of chunks parallel_for will actually use.
unsigned effective_workers(std::size_t n, unsigned threads);

}  // namespace citerank
