#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace cmroot {

// Runs body(i) for i in [0, n).  Results must land in preallocated per-index
// slots; reductions happen afterwards in index order, so the outcome does not
// depend on the thread count.
inline void parallel_for(size_t n, int threads, const std::function<void(size_t)>& body) {
    if (threads <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    size_t nthreads = std::min<size_t>(static_cast<size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (size_t t = 0; t < nthreads; ++t)
        pool.emplace_back([&, t] {
            for (size_t i = t; i < n; i += nthreads) body(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace cmroot
