#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace reprograph {

/// Runs fn(i) for i in [0, count) across `workers` threads using static
/// block partitioning.  Callers write results into preallocated slots by
/// index, so the outcome is identical for any worker count.
template <typename Fn>
void parallel_for_index(std::size_t count, unsigned workers, Fn&& fn) {
    if (count == 0) return;
    if (workers <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t nthreads = std::min<std::size_t>(workers, count);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    const std::size_t chunk = (count + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

inline unsigned default_workers() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

} // namespace reprograph
