// Copyright 2026 The qlock Authors
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

#ifndef QLOCK_PARALLEL_H
#define QLOCK_PARALLEL_H

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qlock {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Worker w takes
/// indices w, w + jobs, ...; callers store results by index so the merged
/// output does not depend on the worker count. The first exception thrown by
/// any call is rethrown after all workers finish.
template <typename Fn>
void parallel_for(size_t count, size_t jobs, Fn &&fn) {
    if (jobs <= 1 || count <= 1) {
        for (size_t i = 0; i < count; i++) {
            fn(i);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    const size_t used = jobs < count ? jobs : count;
    for (size_t w = 0; w < used; w++) {
        workers.emplace_back([&, w]() {
            try {
                for (size_t i = w; i < count; i += used) {
                    fn(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto &t : workers) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace qlock

#endif
