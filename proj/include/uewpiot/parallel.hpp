// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

#ifndef UEWPIOT_PARALLEL_HPP
#define UEWPIOT_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace uewpiot {

/// Worker count from UEWPIOT_THREADS; unset, 0 or garbage means hardware
/// concurrency.
inline unsigned thread_budget() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("UEWPIOT_THREADS");
    if (env == nullptr) {
        return hw;
    }
    try {
        const long v = std::stol(env);
        return v > 0 ? static_cast<unsigned>(v) : hw;
    } catch (...) {
        return hw;
    }
}

/// Calls fn(i) for i in [0, n) across threads. Work items must only write to
/// their own output slot. The first exception is rethrown after joining.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_budget(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace uewpiot

#endif
