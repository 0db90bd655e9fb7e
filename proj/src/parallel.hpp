#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace classix::detail {

// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per
// worker. Small batches stay on the calling thread.
template <class Fn>
void parallel_chunks(std::size_t n, unsigned threads, Fn&& fn, std::size_t min_per_worker = 2048) {
    const std::size_t workers = std::min<std::size_t>(
        std::max(1u, threads), std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_per_worker)));
    if (workers <= 1) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    fn(std::size_t{0}, std::min(n, chunk));
}

}  // namespace classix::detail
