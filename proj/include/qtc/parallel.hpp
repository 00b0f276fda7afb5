#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace qtc {

inline size_t default_worker_count() {
    if (const char* env = std::getenv("QTC_WORKERS")) {
        long v = std::atol(env);
        if (v > 0) return static_cast<size_t>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

/// Runs fn(0..count-1) on a bounded pool, results stored by index; the outcome is
/// identical for every worker count because work units never share state.
template <typename T, typename Fn>
std::vector<T> parallel_map(size_t count, size_t workers, Fn&& fn) {
    std::vector<T> results(count);
    if (count == 0) return results;
    if (workers <= 1 || count == 1) {
        for (size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex err_mu;
    auto body = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                results[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    size_t nthreads = std::min(workers, count);
    pool.reserve(nthreads);
    for (size_t w = 0; w < nthreads; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace qtc
