#include "pcong/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace pcong {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned n)
{
    g_threads.store(std::max(1u, n));
}

unsigned thread_count()
{
    return g_threads.load();
}

void parallel_ranges(std::size_t n, std::size_t align, unsigned workers,
                     const std::function<void(std::size_t, std::size_t)>& fn)
{
    if (n == 0) return;
    align = std::max<std::size_t>(align, 1);
    const std::size_t units = (n + align - 1) / align;
    const std::size_t w = std::min<std::size_t>(std::max(1u, workers), units);
    if (w <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(w);
    pool.reserve(w);
    for (std::size_t i = 0; i < w; ++i) {
        const std::size_t lo = std::min(n, (units * i / w) * align);
        const std::size_t hi = std::min(n, (units * (i + 1) / w) * align);
        pool.emplace_back([&, i, lo, hi] {
            try {
                if (lo < hi) fn(lo, hi);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace pcong
