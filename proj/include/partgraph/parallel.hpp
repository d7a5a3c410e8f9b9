#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace partgraph {

/// Runs fn(i) for every i in [0, count), on up to `workers` threads. Callers
/// write results into slot i of a pre-sized buffer, so the outcome is
/// identical for every worker count. The first exception thrown by any fn is
/// rethrown on the calling thread.
inline void parallel_for_index(int count, int workers, const std::function<void(int)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int spawn = std::min(workers, count);
    pool.reserve(static_cast<std::size_t>(spawn));
    for (int t = 0; t < spawn; ++t) pool.emplace_back(run);
    for (std::thread& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace partgraph
