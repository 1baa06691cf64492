#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace goursat {

/// Worker count from GOURSAT4D_THREADS (unset or 0 means hardware concurrency).
int worker_count();

/// Runs fn(begin, end) over disjoint chunks of [0, n). Work below `grain`
/// items runs on the calling thread.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t grain = 4096) {
    const std::size_t workers = static_cast<std::size_t>(worker_count());
    if (workers <= 1 || n < 2 * grain) {
        if (n > 0) fn(std::size_t{0}, n);
        return;
    }
    const std::size_t chunks = std::min(workers, (n + grain - 1) / grain);
    const std::size_t step = (n + chunks - 1) / chunks;
    std::vector<std::jthread> pool;
    pool.reserve(chunks - 1);
    for (std::size_t c = 1; c < chunks; ++c) {
        const std::size_t b = c * step;
        const std::size_t e = std::min(n, b + step);
        if (b < e) pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    fn(std::size_t{0}, std::min(n, step));
}

}  // namespace goursat
