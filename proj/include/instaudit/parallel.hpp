#pragma once

#include <cstddef>
#include <cstdlib>
#include <atomic>
#include <thread>
#include <vector>

namespace instaudit {

// Worker cap: AUDIT_THREADS environment variable, 0 or unset = auto.
inline std::size_t thread_budget() {
    std::size_t n = 0;
    if (const char* env = std::getenv("AUDIT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) n = static_cast<std::size_t>(v);
    }
    if (n == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        n = hw ? hw : 1;
    }
    return n;
}

// Runs fn(i) for i in [0, n). Results must be written to per-index slots by
// the caller; completion order is unspecified but the output is keyed by
// index, so the outcome matches sequential execution.
template <typename Fn>
void parallel_for_index(std::size_t n, Fn&& fn) {
    const std::size_t workers = std::min(thread_budget(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace instaudit
