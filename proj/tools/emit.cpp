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

#include "emit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <unistd.h>

namespace catmap::cli {

namespace {

std::string temp_path(const std::string &path) {
    return path + ".tmp." + std::to_string(::getpid());
}

void commit(const std::string &tmp, const std::string &path) {
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("cannot rename into " + path);
    }
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return buf.data();
}

void atomic_write(const std::string &path, const std::string &content) {
    const std::string tmp = temp_path(path);
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot open " + tmp);
        }
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) {
            throw std::runtime_error("write failed for " + tmp);
        }
    }
    commit(tmp, path);
}

void write_csv(const std::string &path, const std::vector<std::string> &header,
               const std::vector<std::vector<std::string>> &rows) {
    std::string out;
    auto line = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out += (i == 0 ? "" : ",");
            out += cells[i];
        }
        out += '\n';
    };
    line(header);
    for (const auto &r : rows) {
        line(r);
    }
    atomic_write(path, out);
}

double write_pgm(const std::string &path, std::uint64_t width, std::uint64_t height,
                 const RowSource &source) {
    std::vector<double> row(width);
    double peak = 0.0;
    for (std::uint64_t r = 0; r < height; ++r) {
        source(r, row);
        peak = std::max(peak, *std::max_element(row.begin(), row.end()));
    }
    const std::string tmp = temp_path(path);
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot open " + tmp);
        }
        f << "P5\n# max-normalized: pixel = round(255 * value / max), max = "
          << format_double(peak) << "\n"
          << width << " " << height << "\n255\n";
        std::vector<unsigned char> bytes(width);
        for (std::uint64_t r = 0; r < height; ++r) {
            source(r, row);
            for (std::uint64_t c = 0; c < width; ++c) {
                const double v = peak > 0.0 ? 255.0 * row[c] / peak : 0.0;
                bytes[c] = static_cast<unsigned char>(std::clamp(std::lround(v), 0L, 255L));
            }
            f.write(reinterpret_cast<const char *>(bytes.data()),
                    static_cast<std::streamsize>(width));
        }
        if (!f) {
            throw std::runtime_error("write failed for " + tmp);
        }
    }
    commit(tmp, path);
    return peak;
}

} // namespace catmap::cli
