#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace pf {

// Worker count: PARITY_FORGE_THREADS caps it when set.
inline unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("PARITY_FORGE_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return n;
}

// Static block partition of [0, n). Results must be merged associatively by
// the caller (each worker writes its own slot) so thread count never changes
// the outcome.
inline void parallel_for_blocks(std::size_t n, const std::function<void(std::size_t, std::size_t, unsigned)>& fn) {
    const unsigned workers = n == 0 ? 1 : static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
    if (workers <= 1) {
        fn(0, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = n * w / workers;
        const std::size_t hi = n * (w + 1) / workers;
        pool.emplace_back([&fn, lo, hi, w] { fn(lo, hi, w); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace pf
