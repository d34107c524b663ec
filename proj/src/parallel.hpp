#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace corpuskit {

/// Worker count: hardware concurrency capped by CORPUSKIT_THREADS.
inline unsigned effective_threads() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("CORPUSKIT_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return n;
}

/// Runs f(i) for i in [0, n). Work items must be independent; results
/// keyed by index stay deterministic regardless of the thread count.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
    const unsigned workers = effective_threads();
    if (workers <= 1 || n < 2048) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    constexpr std::size_t kBlock = 256;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&]() {
            for (;;) {
                const std::size_t begin = next.fetch_add(kBlock);
                if (begin >= n) return;
                const std::size_t end = begin + kBlock < n ? begin + kBlock : n;
                for (std::size_t i = begin; i < end; ++i) f(i);
            }
        });
    }
    for (std::thread& t : threads) t.join();
}

}  // namespace corpuskit
