#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace walklab {

// Worker count for the distribution passes: WALKLAB_THREADS when set (>= 1),
// otherwise the hardware concurrency.
inline int worker_threads() {
    if (const char* env = std::getenv("WALKLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// fn(lo, hi) over a partition of [0, count); inline when one worker suffices.
inline void parallel_for_chunks(long long count, const std::function<void(long long, long long)>& fn) {
    const int workers = std::min<long long>(worker_threads(), count);
    if (workers <= 1 || count <= 1) {
        if (count > 0) fn(0, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const long long chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long long lo = w * chunk, hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace walklab
