#pragma once

// Minimal data-parallel helpers. The worker count comes from WCC_THREADS (default 1).
// Reductions are pairwise over a fixed index order, so results do not depend on the
// thread count.

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wcc {

inline auto thread_count() -> int
{
    static int const n = [] {
        char const* env = std::getenv("WCC_THREADS");
        if (env == nullptr)
            return 1;
        int const v = std::atoi(env);
        return std::clamp(v, 1, 256);
    }();
    return n;
}

/// Calls body(i) for i in [begin, end), splitting into contiguous chunks per worker.
/// The first exception thrown by any worker is rethrown on the calling thread.
template <class Body>
void parallel_for(int begin, int end, Body&& body)
{
    int const total = end - begin;
    if (total <= 0)
        return;
    int const workers = std::min(thread_count(), total);
    if (workers == 1) {
        for (int i = begin; i < end; ++i)
            body(i);
        return;
    }

    std::exception_ptr error;
    std::mutex guard;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        int const lo = begin + static_cast<int>(static_cast<long long>(total) * w / workers);
        int const hi = begin + static_cast<int>(static_cast<long long>(total) * (w + 1) / workers);
        pool.emplace_back([&, lo, hi] {
            try {
                for (int i = lo; i < hi; ++i)
                    body(i);
            } catch (...) {
                std::lock_guard lock(guard);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

/// Pairwise sum of values[0..n).
inline auto pairwise_sum(double const* values, std::size_t n) -> double
{
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += values[i];
        return s;
    }
    std::size_t const h = n / 2;
    return pairwise_sum(values, h) + pairwise_sum(values + h, n - h);
}

inline auto pairwise_sum(std::vector<double> const& v) -> double { return pairwise_sum(v.data(), v.size()); }

} // namespace wcc
