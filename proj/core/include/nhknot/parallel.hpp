#ifndef NHKNOT_PARALLEL_HPP
#define NHKNOT_PARALLEL_HPP

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace nhknot {

/// Worker count: hardware concurrency capped by the NHKNOT_THREADS
/// environment variable (values < 1 are ignored).
inline std::size_t worker_count() {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("NHKNOT_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<std::size_t>(cap) < n) n = static_cast<std::size_t>(cap);
    }
    return n;
}

/// Runs fn(i) for i in [0, n). Each index owns its output slot, so the
/// result is independent of the thread schedule.
template <typename Fn>
void parallel_for_index(std::size_t n, Fn&& fn) {
    std::size_t workers = worker_count();
    if (workers <= 1 || n < 2 * workers) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace nhknot

#endif
