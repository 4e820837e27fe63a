#pragma once

#include <cstddef>
#include <functional>

namespace stoq {

/// Runs fn(i) for i in [0, count) across at most `threads` workers.
/// Work is partitioned by index, so results written to index i of a
/// pre-sized buffer are deterministic regardless of scheduling.
/// threads <= 1 runs inline.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace stoq
