// Copyright 2026 The ACQST Authors
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

#ifndef ACQST_PARALLEL_H
#define ACQST_PARALLEL_H

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace acqst {

/// Worker count: hardware concurrency, capped by the ACQST_THREADS
/// environment variable when it is set to a positive integer.
inline unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("ACQST_THREADS")) {
        try {
            long cap = std::stol(env);
            if (cap > 0) {
                hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
            }
        } catch (const std::exception &) {
        }
    }
    return hw;
}

/// Runs body(i) for i in [0, count). Each index is handled exactly once;
/// callers write results into per-index slots so the output is independent of
/// how indices were distributed over threads.
template <typename Body>
void parallel_for(std::size_t count, Body &&body) {
    unsigned workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&]() {
        try {
            for (std::size_t i = next++; i < count; i = next++) {
                body(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next = count;
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    for (unsigned t = 1; t < workers; t++) {
        threads.emplace_back(run);
    }
    run();
    for (auto &t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace acqst

#endif  // ACQST_PARALLEL_H
