#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace innoprof {

/// Runs fn(chunk_index, begin, end) over [0, n) split into a fixed number of
/// chunks. The chunk grid is independent of the worker count, so per-chunk
/// accumulators reduced in chunk order give results that do not vary with
/// --threads.
inline void parallel_chunks(std::size_t n, unsigned threads,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& fn,
                            std::size_t n_chunks = 64) {
    if (n == 0) return;
    n_chunks = std::min(n_chunks, n);
    if (threads <= 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            std::size_t begin = c * n / n_chunks;
            std::size_t end = (c + 1) * n / n_chunks;
            fn(c, begin, end);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            std::size_t begin = c * n / n_chunks;
            std::size_t end = (c + 1) * n / n_chunks;
            fn(c, begin, end);
        }
    };
    std::vector<std::thread> pool;
    unsigned n_workers = std::min<std::size_t>(threads, n_chunks);
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace innoprof
