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
 * Deterministic artifact writers. Every file is written to a temporary
 * sibling and renamed into place.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace catmap::cli {

/// %.17g rendering; nan and inf are spelled out.
std::string format_double(double v);

void atomic_write(const std::string &path, const std::string &content);

/// Header line plus rows, comma separated, trailing newline.
void write_csv(const std::string &path, const std::vector<std::string> &header,
               const std::vector<std::vector<std::string>> &rows);

/// Fill out[0..width) with row `row` of the image.
using RowSource = std::function<void(std::uint64_t row, std::vector<double> &out)>;

/// 8-bit binary PGM scaled by the global maximum. Rows are produced twice,
/// once to find the maximum and once to write, so memory stays O(width).
/// Returns the maximum.
double write_pgm(const std::string &path, std::uint64_t width, std::uint64_t height,
                 const RowSource &source);

} // namespace catmap::cli
