#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace ltr {

// Runs fn(i) for i in [0, total). Work items must be independent; callers
// that aggregate floating point results should write into per-index slots
// and reduce sequentially afterwards so the thread count cannot change
// the output.
inline void parallel_for(size_t total, int threads, const std::function<void(size_t)>& fn) {
    if (threads <= 1 || total <= 1) {
        for (size_t i = 0; i < total; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= total) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int n = std::min<size_t>(threads, total);
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// Shortest round-trip decimal form; locale independent, so CSV output is
// byte-stable across platforms and thread counts.
inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    double back;
    std::sscanf(buf, "%lg", &back);
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[64];
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, x);
        std::sscanf(shorter, "%lg", &back);
        if (back == x) return shorter;
    }
    return buf;
}

}  // namespace ltr
