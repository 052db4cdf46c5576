#pragma once
// Minimal fork-join helper for data-parallel loops over an index range.
// Workers pull chunks from a shared counter; results must be written to
// caller-owned slots indexed by the loop variable so the outcome does not
// depend on the schedule.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qel {

// Worker count resolution: the QEL_THREADS environment variable wins over
// everything, then std::thread::hardware_concurrency(), then 1.
inline unsigned default_thread_count() {
    if (const char* env = std::getenv("QEL_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(std::min(v, 256L));
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1u;
}

// Runs body(i) for every i in [0, n). threads == 0 picks default_thread_count();
// threads == 1 runs inline. The first exception thrown by any worker is
// rethrown on the calling thread after all workers have joined.
template <class Body>
void parallel_for(std::size_t n, Body&& body, unsigned threads = 0) {
    if (n == 0) return;
    unsigned k = threads ? threads : default_thread_count();
    k = static_cast<unsigned>(std::min<std::size_t>(k, n));
    if (k <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    const std::size_t chunk = std::max<std::size_t>(1, n / (8 * k));
    std::exception_ptr first_error = nullptr;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            std::size_t begin = next.fetch_add(chunk);
            if (begin >= n) return;
            std::size_t end = std::min(n, begin + chunk);
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(k);
    for (unsigned w = 0; w < k; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace qel
