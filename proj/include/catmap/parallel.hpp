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

/**
 * @file
 * Minimal static-partition parallel loop. Every index is written by exactly
 * one worker, so results do not depend on the thread count.
 */
#pragma once

#include <cstddef>
#include <functional>

namespace catmap {

/// Number of worker threads used by parallel loops (at least 1).
unsigned thread_count();

/// Override the worker count; 0 restores the default from the environment.
void set_thread_count(unsigned n);

/// Run body(begin, end) over contiguous chunks of [0, n).
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)> &body,
                  std::size_t min_chunk = 64);

} // namespace catmap
