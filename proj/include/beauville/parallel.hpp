#pragma once

// Minimal fork-join helper: split [0, n) into one contiguous chunk per worker.
// Chunk boundaries depend only on (n, workers), so results assembled in worker
// order are identical to a serial run regardless of scheduling.

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace beauville::detail {

inline unsigned resolve_threads(unsigned requested) {
    if (requested) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// fn(worker, lo, hi) is called for worker = 0..workers-1; empty ranges allowed.
template <class Fn>
void parallel_chunks(std::size_t n, unsigned workers, Fn&& fn) {
    if (workers <= 1) {
        fn(0u, std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::size_t base = n / workers, rem = n % workers, start = 0;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t len = base + (w < rem ? 1 : 0);
        std::size_t lo = start, hi = start + len;
        start = hi;
        pool.emplace_back([&, w, lo, hi] {
            try {
                fn(w, lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace beauville::detail
