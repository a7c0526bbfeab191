#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kderiv {

inline int& worker_count_ref() {
    static int workers = 1;
    return workers;
}
inline int worker_count() { return worker_count_ref(); }
inline void set_worker_count(int w) { worker_count_ref() = std::max(1, w); }

/// Runs fn(i) for i in [0, n). Results must be written to per-index slots;
/// the first exception is rethrown after all workers stop.
template <class Fn>
void parallel_for(int n, Fn&& fn) {
    const int w = std::min(worker_count(), n);
    if (w <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex m;
    auto run = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(m);
                if (!error) error = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> threads;
    for (int t = 0; t < w; ++t) threads.emplace_back(run);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace kderiv
