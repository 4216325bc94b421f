#pragma once

#include <atomic>
#include <future>
#include <thread>
#include <vector>

namespace kappa {

namespace detail {
inline std::atomic<int> g_max_threads{0};
}

// Upper bound on worker threads for the parallel loops; 0 means the hardware
// concurrency.
inline void set_max_threads(int n) { detail::g_max_threads = n < 0 ? 0 : n; }
inline int max_threads() {
    int n = detail::g_max_threads;
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? (int)hw : 1;
}

// out[k] = f(k) for k < n, at most max_threads() at a time. Results keep
// their index order.
template <class F>
auto parallel_map(int n, F f) -> std::vector<decltype(f(0))> {
    using R = decltype(f(0));
    std::vector<R> out;
    out.reserve(n);
    int width = max_threads();
    if (width <= 1) {
        for (int k = 0; k < n; ++k) out.push_back(f(k));
        return out;
    }
    for (int start = 0; start < n; start += width) {
        std::vector<std::future<R>> jobs;
        for (int k = start; k < std::min(n, start + width); ++k) jobs.push_back(std::async(std::launch::async, f, k));
        for (auto& j : jobs) out.push_back(j.get());
    }
    return out;
}

}  // namespace kappa
