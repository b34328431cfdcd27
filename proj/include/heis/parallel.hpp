#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace heis {

// Static-chunk parallel loop; deterministic as long as the body writes only
// to its own slot.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 2;
    const std::size_t nthreads = std::min<std::size_t>(hw, count);
    if (nthreads <= 1) {
        for (size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < count; i += nthreads) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace heis
