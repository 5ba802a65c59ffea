// Copyright 2026 The chaoscorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace chaoscorr {

/// Evaluates f(0), ..., f(count-1) on up to `threads` workers and returns the results in
/// index order. Results do not depend on the number of workers as long as f(i) is a pure
/// function of i. The first exception thrown by any call is rethrown.
template <class F>
auto parallel_map(std::size_t count, unsigned threads, F &&f)
    -> std::vector<std::invoke_result_t<F &, std::size_t>> {
    using R = std::invoke_result_t<F &, std::size_t>;
    std::vector<std::optional<R>> slots(count);
    const unsigned workers =
        static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, count)));

    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            slots[i].emplace(f(i));
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto work = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                try {
                    slots[i].emplace(f(i));
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next.store(count);
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto &t : pool) {
            t.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    std::vector<R> out;
    out.reserve(count);
    for (auto &slot : slots) {
        out.push_back(std::move(*slot));
    }
    return out;
}

} // namespace chaoscorr
