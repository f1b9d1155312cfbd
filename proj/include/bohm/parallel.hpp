#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace bohm {

// Worker count: BOHM_WORKERS env var, else hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("BOHM_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? (int)hw : 1;
}

// Static block partition; results are independent of the worker count because
// every index is processed exactly once with no shared mutable state.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    const int workers = worker_count();
    if (workers <= 1 || n <= 1) {
        body(0, n);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
        const std::size_t lo = (std::size_t)w * chunk;
        if (lo >= n) break;
        const std::size_t hi = std::min(n, lo + chunk);
        threads.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& t : threads) t.join();
}

}  // namespace bohm
