#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace gcdsum {

/// Runs fn(i) for i = 0..n-1 on up to `threads` workers pulling indices from
/// a shared counter.  Each index's work is independent and writes only its
/// own output slot, so results do not depend on the worker count.
template <class Fn>
void parallel_for_indexed(size_t n, int threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    size_t workers = std::min<size_t>((size_t)threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace gcdsum
