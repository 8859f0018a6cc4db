#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace pestcast {

/// Runs fn(i) for i in [0, n). Items must be independent and write only to
/// their own output slots; results are then identical for any thread count,
/// which is what the determinism contract requires.
template <typename Fn>
void parallel_for(size_t n, int n_threads, Fn&& fn) {
    if (n == 0) return;
    const size_t workers = std::min<size_t>(std::max(n_threads, 1), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                const size_t i = next.fetch_add(1);
                if (i >= n) break;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace pestcast
