#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace vorcal {

// Run fn(i) for i in [0, n).  With parallel=true the index range is split
// across hardware threads; results must be written to pre-sized slots so the
// outcome is identical to the sequential order.
inline void for_each_index(std::size_t n, bool parallel, const std::function<void(std::size_t)>& fn) {
    if (!parallel || n < 4) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 8u);
    if (workers < 2) workers = 2;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace vorcal
