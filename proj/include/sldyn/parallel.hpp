#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace sldyn {

// Runs chunk(begin, end) over a partition of [0, n). Results must go into
// preallocated per-index slots so the merge is deterministic regardless of
// the thread count.
inline void parallel_for(int n, int threads, const std::function<void(int, int)>& chunk) {
    if (threads <= 1 || n < 2 * threads) {
        if (n > 0)
            chunk(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int per = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        int begin = t * per;
        int end = std::min(n, begin + per);
        if (begin >= end)
            break;
        pool.emplace_back(chunk, begin, end);
    }
    for (auto& th : pool)
        th.join();
}

}  // namespace sldyn
