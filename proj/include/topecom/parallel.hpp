#ifndef TOPECOM_PARALLEL_HPP
#define TOPECOM_PARALLEL_HPP

#include <cstdint>
#include <thread>
#include <vector>

namespace topecom {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Splits [begin, end) into contiguous chunks, one worker thread per chunk.
// fn(chunk_begin, chunk_end, chunk_index) must not throw.
// Results that are accumulated per chunk should be merged by the caller in
// chunk order so runs are reproducible at any thread count.
template <typename Fn>
void parallel_chunks(std::int64_t begin, std::int64_t end, int threads, Fn&& fn) {
    std::int64_t n = end - begin;
    if (n <= 0) return;
    int workers = resolve_threads(threads);
    if (static_cast<std::int64_t>(workers) > n) workers = static_cast<int>(n);
    if (workers <= 1) {
        fn(begin, end, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::int64_t chunk = n / workers, extra = n % workers, at = begin;
    for (int w = 0; w < workers; ++w) {
        std::int64_t len = chunk + (w < extra ? 1 : 0);
        std::int64_t lo = at, hi = at + len;
        at = hi;
        pool.emplace_back([&fn, lo, hi, w] { fn(lo, hi, w); });
    }
    for (auto& th : pool) th.join();
}

} // namespace topecom

#endif
