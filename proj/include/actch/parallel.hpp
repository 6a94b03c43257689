#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace actch {

/// Run fn(0..n-1), optionally across threads. Work items must be independent;
/// callers make results deterministic by indexing into preallocated slots and
/// reducing sequentially afterwards.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    const int workers = std::min(threads, n);
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace actch
