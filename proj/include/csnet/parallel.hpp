#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace csnet {

inline unsigned default_threads() noexcept {
    unsigned t = std::thread::hardware_concurrency();
    return t == 0 ? 2 : t;
}

// Runs fn(i) for i in [0, n). Work items must not depend on execution order;
// callers that reduce results should store per-index outputs and combine them
// in index order to keep floating-point sums deterministic.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         unsigned threads = 0) {
    if (threads == 0) threads = default_threads();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// Runs fn(begin, end) over a static partition of [0, n) into contiguous blocks.
inline void parallel_blocks(std::size_t n,
                            const std::function<void(std::size_t, std::size_t)>& fn,
                            unsigned threads = 0) {
    if (threads == 0) threads = default_threads();
    std::size_t blocks = std::min<std::size_t>(threads * 4, std::max<std::size_t>(n, 1));
    std::size_t chunk = (n + blocks - 1) / blocks;
    parallel_for(blocks,
                 [&](std::size_t bi) {
                     std::size_t lo = bi * chunk;
                     std::size_t hi = std::min(n, lo + chunk);
                     if (lo < hi) fn(lo, hi);
                 },
                 threads);
}

}  // namespace csnet
