#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace zetawalk {

// Worker count: hardware concurrency, capped by the ZETAWALK_THREADS
// environment variable when it parses as a positive integer (anything else is
// ignored).
inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("ZETAWALK_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            unsigned cap = static_cast<unsigned>(v);
            return cap < hw ? cap : hw;
        }
    }
    return hw;
}

// Static block partition of [0,n).  Each worker writes only its own slots, so
// results are bit-identical for every thread count.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& body) {
    unsigned workers = worker_count();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = static_cast<std::size_t>(w) * chunk;
        std::size_t hi = lo + chunk < n ? lo + chunk : n;
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace zetawalk
