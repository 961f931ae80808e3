#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace beurling {

/// Runs body(chunk) for chunk in [0, n_chunks) on a small thread pool.
/// Callers write per-chunk results into preallocated slots and merge them in
/// chunk order afterwards, so results never depend on the thread count.
template <class Body>
void for_each_chunk(std::size_t n_chunks, Body&& body) {
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hw, n_chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) body(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t c = next++; c < n_chunks; c = next++) body(c);
            } catch (...) {
                errors[w] = std::current_exception();
                next = n_chunks;
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace beurling
