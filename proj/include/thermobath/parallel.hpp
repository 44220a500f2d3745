// parallel.hpp — Index-ordered parallel loop over independent work units

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace thermobath {

// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
// concurrency). Units are assigned by striding, and results must be written
// to per-index slots, so output never depends on scheduling. If several
// units throw, the exception of the lowest index is rethrown.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));

    std::vector<std::exception_ptr> errors(n);
    auto worker = [&](unsigned t) {
        for (std::size_t i = t; i < n; i += threads) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    }

    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace thermobath
