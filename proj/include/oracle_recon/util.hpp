#ifndef ORACLE_RECON_UTIL_HPP
#define ORACLE_RECON_UTIL_HPP

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace oracle_recon {

// SplitMix64 step; used to derive independent per-trial seeds from a master
// seed so any cell of a sweep can be reproduced in isolation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t master_seed,
                                std::uint64_t cell_index,
                                std::uint64_t trial_index) {
    return splitmix64(splitmix64(master_seed ^ splitmix64(cell_index)) ^ trial_index);
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. Work is pulled
// from a shared atomic counter; callers write results into per-index slots to
// keep output independent of scheduling.
inline void parallel_for_index(std::size_t count, int threads,
                               const std::function<void(std::size_t)>& fn) {
    if (threads < 1) threads = 1;
    if (threads == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            if (failed.load(std::memory_order_relaxed)) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

// Shortest decimal form that round-trips; keeps CSV output byte-stable for
// identical inputs regardless of thread count.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

}  // namespace oracle_recon

#endif
