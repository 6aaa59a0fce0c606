#ifndef TPTD_PARALLEL_HPP
#define TPTD_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tptd {

/// Worker count used when the caller passes 0.
[[nodiscard]] inline std::size_t default_parallelism() noexcept {
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs fn(i) for i in [0, count) on up to `max_parallel` threads.
/// Work items must write only to their own output slot. If any item throws,
/// the exception from the lowest failing index is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t max_parallel, Fn&& fn) {
    if (max_parallel == 0) max_parallel = default_parallelism();
    const std::size_t workers = std::min(count, max_parallel);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = count;
    std::exception_ptr error;

    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };

    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace tptd

#endif  // TPTD_PARALLEL_HPP
