#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace granit {

inline int default_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs f(i) for i in [0, n) on a bounded worker pool.  Work items must
// write only to their own output slot; callers reduce afterwards in
// index order, so results do not depend on the schedule.
template <typename F>
void parallel_for(std::size_t n, int workers, F&& f) {
    if (workers <= 0) workers = default_workers();
    if (workers == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
                break;
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t n_threads =
        std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace granit
