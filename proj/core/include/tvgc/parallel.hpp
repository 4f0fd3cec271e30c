#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <utility>
#include <vector>

namespace tvgc::detail {

/// Runs fn(0) .. fn(count-1) across up to `threads` workers. Each index is
/// claimed exactly once; callers write results into per-index slots, so the
/// outcome is identical for any worker count. fn must not throw.
template <typename Fn>
void parallel_for_index(std::size_t count, int threads, Fn&& fn) {
    const int worker_count = std::max(1, threads);
    if (worker_count == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(worker_count));
    for (int w = 0; w < worker_count; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
}

} // namespace tvgc::detail
