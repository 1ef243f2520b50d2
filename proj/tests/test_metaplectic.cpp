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

#include <doctest.h>

#include <cmath>

#include "catmap/error.hpp"
#include "catmap/metaplectic.hpp"
#include "support.hpp"

using namespace catmap;
using catmap::testing::cat;
using catmap::testing::max_abs;
using catmap::testing::random_vector;
using catmap::testing::sl2;

TEST_SUITE("metaplectic") {

TEST_CASE("identity propagator has zero Egorov defect and trivial phase") {
    const StateSpace s(1, 12);
    const Propagator id = identity_propagator(s);
    CHECK(egorov_defect(id, 3) == 0.0);
    const PeriodPhase pp = period_phase(id, 1);
    CHECK(pp.phase == 0.0);
    CHECK(pp.defect == 0.0);
}

TEST_CASE("exact Egorov for the cat map and its tensor square") {
    const StateSpace s(1, 144);
    const Propagator m = metaplectic_sl2(s, cat());
    CHECK(egorov_defect(m, 3) < 1e-10);
    const StateSpace s2(1, 12);
    const Propagator m2 = metaplectic_sl2(s2, cat());
    CHECK(egorov_defect(tensor(m2, m2), 2) < 1e-10);
    CHECK(egorov_defect(metaplectic_sl2(StateSpace(1, 30), sl2(5, 2, 2, 1)), 2) < 1e-10);
}

TEST_CASE("kernel paths agree") {
    const StateSpace s(1, 90);
    const auto a = sl2(5, 3, 3, 2);
    const Propagator fft = metaplectic_sl2(s, a, KernelPath::Fft);
    const Propagator streamed = metaplectic_sl2(s, a, KernelPath::Streamed);
    const Propagator dense = metaplectic_sl2(s, a, KernelPath::Dense);
    const auto x = random_vector(90, 3);
    std::vector<cplx> y1(90), y2(90), y3(90);
    fft.apply(x, y1);
    streamed.apply(x, y2);
    dense.apply(x, y3);
    double d12 = 0.0;
    double d13 = 0.0;
    for (std::size_t i = 0; i < 90; ++i) {
        d12 = std::max(d12, std::abs(y1[i] - y2[i]));
        d13 = std::max(d13, std::abs(y1[i] - y3[i]));
    }
    CHECK(d12 < 1e-11);
    CHECK(d13 < 1e-11);
    std::vector<cplx> back(90);
    fft.apply_inverse(y1, back);
    double err = 0.0;
    for (std::size_t i = 0; i < 90; ++i) {
        err = std::max(err, std::abs(back[i] - x[i]));
    }
    CHECK(err < 1e-11);
}

TEST_CASE("unitarity and multiplicativity") {
    for (std::uint64_t N : {34U, 144U}) {
        const StateSpace s(1, N);
        const Propagator m = metaplectic_sl2(s, cat());
        CHECK(unitarity_defect(m) < 1e-10);
        const DenseMatrix mm = *compose(m, m).dense();
        const DenseMatrix m2 = *metaplectic_sl2(s, cat().power(2)).dense();
        CHECK(max_abs(mm - m2) < 1e-9);
    }
    const StateSpace s(1, 20);
    const auto a = sl2(2, 1, 1, 1);
    const auto b = sl2(3, 2, 1, 1);
    const DenseMatrix ab = *compose(metaplectic_sl2(s, a), metaplectic_sl2(s, b)).dense();
    CHECK(max_abs(ab - *metaplectic_sl2(s, a * b).dense()) < 1e-9);
}

TEST_CASE("period phase is a scalar") {
    const StateSpace s(1, 144);
    const PeriodPhase pp = period_phase(metaplectic_sl2(s, cat()), 12);
    CHECK(pp.defect < 1e-8);
    CHECK(std::abs(pp.phase) <= 3.15);
    const StateSpace s8(1, 8);
    const PeriodPhase p8 = period_phase(metaplectic_sl2(s8, cat()), quantum_period(cat(), 8));
    CHECK(p8.defect < 1e-10);
    // A period that is too short is rejected.
    CHECK_THROWS_AS(period_phase(metaplectic_sl2(s, cat()), 6), InvariantError);
}

TEST_CASE("rotation propagator quantizes the quarter turn") {
    const StateSpace s(2, 8);
    const Propagator r = rotation_propagator(s);
    CHECK(unitarity_defect(r) < 1e-13);
    CHECK(egorov_defect(r, 1) < 1e-12);
    const Propagator r4 = compose(compose(r, r), compose(r, r));
    CHECK(max_abs(*r4.dense() - DenseMatrix::Identity(64, 64)) < 1e-12);
}

TEST_CASE("unsupported inputs") {
    CHECK_THROWS_AS(metaplectic_sl2(StateSpace(1, 12), sl2(1, -1, 0, 1)), UnsupportedInput);
    CHECK_THROWS_AS(metaplectic_sl2(StateSpace(1, 13), cat()), PreconditionError);
    CHECK_THROWS_AS(rotation_propagator(StateSpace(1, 8)), UnsupportedInput);
}

}
