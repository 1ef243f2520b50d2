// Copyright 2026 The catmap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "catmap/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace catmap {

namespace {

std::atomic<unsigned> g_override{0};

unsigned env_threads() {
    const char *v = std::getenv("CATMAP_THREADS");
    if (v != nullptr) {
        char *end = nullptr;
        const long n = std::strtol(v, &end, 10);
        if (end != v && n > 0) {
            return static_cast<unsigned>(std::min<long>(n, 256));
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

} // namespace

unsigned thread_count() {
    const unsigned o = g_override.load();
    return o != 0 ? o : env_threads();
}

void set_thread_count(unsigned n) { g_override.store(n); }

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)> &body,
                  std::size_t min_chunk) {
    if (n == 0) {
        return;
    }
    const std::size_t workers =
        std::min<std::size_t>(thread_count(), (n + min_chunk - 1) / min_chunk);
    if (workers <= 1) {
        body(0, n);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) {
            break;
        }
        pool.emplace_back([&, lo, hi] {
            try {
                body(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
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

} // namespace catmap
