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

#pragma once

#include <random>
#include <vector>

#include "catmap/hilbert.hpp"
#include "catmap/symplectic.hpp"

namespace catmap::testing {

inline SymplecticMatrix sl2(long a, long b, long c, long d) {
    return SymplecticMatrix(IntMatrix{{a, b}, {c, d}});
}

inline SymplecticMatrix cat() { return sl2(2, 1, 1, 1); }

/// [[0, B], [-B, 0]] with B = [[2,1],[1,1]] in interleaved coordinates.
inline SymplecticMatrix tight_block() {
    return SymplecticMatrix(parse_matrix("0,0,2,1;0,0,1,1;-2,-1,0,0;-1,-1,0,0"));
}

inline double max_abs(const DenseMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> v(n);
    for (auto &x : v) {
        x = {g(rng), g(rng)};
    }
    return v;
}

inline std::vector<BigInt> big(std::initializer_list<long> xs) {
    std::vector<BigInt> out;
    for (long x : xs) {
        out.emplace_back(x);
    }
    return out;
}

} // namespace catmap::testing
