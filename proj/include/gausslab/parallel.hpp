#ifndef GAUSSLAB_PARALLEL_HPP_
#define GAUSSLAB_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace gausslab {

// Worker count resolution: explicit request > GAUSSLAB_THREADS > hardware.
int resolve_threads(int requested = 0);

// Runs fn(block_index, begin, end) over a static partition of [0, n) into
// contiguous blocks, one per worker. Block boundaries depend only on n and
// the block count, and callers must merge per-block results with an exact
// associative operation, so totals are identical for any worker count.
void parallel_blocks(std::size_t n, int threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace gausslab

#endif  // GAUSSLAB_PARALLEL_HPP_
