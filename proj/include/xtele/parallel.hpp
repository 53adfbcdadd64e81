// Copyright 2026 The xtele Authors
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
#include <vector>

namespace xtele {

namespace detail {

template <typename Fn>
void run_pool(std::size_t jobs, unsigned workers, Fn &&fn) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t j = next.fetch_add(1); j < jobs; j = next.fetch_add(1)) {
                try {
                    fn(j);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace detail

/// Worker count to use for `requested`; 0 means one per hardware thread.
inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs fn(job) for job in [0, jobs) on up to `threads` workers and returns the
/// results in job order, so any reduction over them is independent of the
/// schedule.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(std::size_t jobs, unsigned threads, Fn &&fn) {
    std::vector<std::optional<Result>> slots(jobs);
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), jobs));
    if (workers <= 1) {
        for (std::size_t j = 0; j < jobs; ++j) {
            slots[j].emplace(fn(j));
        }
    } else {
        detail::run_pool(jobs, workers, [&](std::size_t j) { slots[j].emplace(fn(j)); });
    }
    std::vector<Result> results;
    results.reserve(jobs);
    for (auto &s : slots) {
        results.push_back(std::move(*s));
    }
    return results;
}

}  // namespace xtele
