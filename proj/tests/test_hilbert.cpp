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
#include <numbers>

#include "catmap/error.hpp"
#include "catmap/hilbert.hpp"
#include "support.hpp"

using namespace catmap;
using catmap::testing::max_abs;
using catmap::testing::random_vector;

TEST_SUITE("hilbert") {

TEST_CASE("state space basics") {
    const StateSpace s(2, 12);
    CHECK(s.dimension() == 144);
    CHECK(s.h() == doctest::Approx(1.0 / (2.0 * std::numbers::pi * 12.0)));
    CHECK(s.theta_is_zero());
    const StateSpace t(1, 12, {Rational(1, 2), Rational(0)});
    CHECK_FALSE(t.theta_is_zero());
    CHECK_THROWS_AS(t.require_zero_theta(), UnsupportedInput);
}

TEST_CASE("zero translation is the identity") {
    const StateSpace s(1, 10);
    const DenseMatrix u = translation_matrix(s, {0, 0});
    CHECK(max_abs(u - DenseMatrix::Identity(10, 10)) == 0.0);
    const StateSpace s2(2, 6);
    const DenseMatrix u2 = translation_matrix(s2, {0, 0, 0, 0});
    CHECK(max_abs(u2 - DenseMatrix::Identity(36, 36)) == 0.0);
}

TEST_CASE("translations are unitary and commute up to an N-th root of unity") {
    const std::uint64_t N = 14;
    const StateSpace s(1, N);
    for (const LatticeVector &j : {LatticeVector{1, 0}, LatticeVector{3, -2},
                                   LatticeVector{-5, 7}, LatticeVector{15, 1}}) {
        const DenseMatrix u = translation_matrix(s, j);
        CHECK(max_abs(u.adjoint() * u - DenseMatrix::Identity(N, N)) < 1e-13);
    }
    const LatticeVector j{2, 1};
    const LatticeVector k{-1, 3};
    const DenseMatrix uj = translation_matrix(s, j);
    const DenseMatrix uk = translation_matrix(s, k);
    const DenseMatrix comm = uj * uk * uj.adjoint() * uk.adjoint();
    const cplx c = comm(0, 0);
    CHECK(max_abs(comm - c * DenseMatrix::Identity(N, N)) < 1e-12);
    CHECK(std::abs(std::pow(c, static_cast<double>(N)) - 1.0) < 1e-10);
    // sigma(j, k) = 7 is not a multiple of N, so the phase is nontrivial.
    CHECK(std::abs(c - 1.0) > 1e-3);
}

TEST_CASE("matrix-free translation matches its adjoint") {
    const StateSpace s(2, 9);
    const TranslationOperator t = translation(s, {2, -1, 4, 3});
    const auto x = random_vector(s.dimension(), 1);
    const auto y = random_vector(s.dimension(), 2);
    std::vector<cplx> tx(x.size());
    std::vector<cplx> ty(y.size());
    t.apply(x, tx);
    t.apply_adjoint(y, ty);
    CHECK(std::abs(inner(tx, y) - inner(x, ty)) < 1e-10);
}

TEST_CASE("rational translations need N w integral") {
    const StateSpace s(1, 8);
    const std::vector<Rational> ok{Rational(1, 4), Rational(3, 8)};
    CHECK(max_abs(translation_rational(s, ok).materialize() -
                  translation_matrix(s, {2, 3})) == 0.0);
    const std::vector<Rational> bad{Rational(1, 3), Rational(0)};
    CHECK_THROWS_AS(translation_rational(s, bad), UnsupportedInput);
}

TEST_CASE("Weyl quantization of 1 is the identity and real symbols are self-adjoint") {
    const StateSpace s(1, 16);
    TrigObservable one;
    one.add({0, 0}, 1.0);
    CHECK(max_abs(weyl_quantize(s, one).materialize() - DenseMatrix::Identity(16, 16)) <
          1e-14);

    TrigObservable a;
    a.add({1, 0}, {0.3, 0.4});
    a.add({-1, 0}, {0.3, -0.4});
    a.add({2, -3}, {0.0, 1.5});
    a.add({-2, 3}, {0.0, -1.5});
    a.add({0, 0}, 0.7);
    REQUIRE(a.is_real());
    const DenseMatrix op = weyl_quantize(s, a).materialize();
    CHECK(max_abs(op - op.adjoint()) < 1e-13);

    // Op(conj a) = Op(a)^* for a complex symbol too.
    TrigObservable b;
    b.add({1, 2}, {0.2, 0.9});
    const DenseMatrix ob = weyl_quantize(s, b).materialize();
    const DenseMatrix obc = weyl_quantize(s, b.conjugate()).materialize();
    CHECK(max_abs(ob.adjoint() - obc) < 1e-13);
    CHECK(b.coefficient_l1() == doctest::Approx(std::abs(cplx(0.2, 0.9))));

    const TrigObservable empty;
    CHECK(max_abs(weyl_quantize(s, empty).materialize()) == 0.0);
}

TEST_CASE("projected Gaussian is normalized, real and even") {
    for (std::uint64_t N : {34U, 144U, 46368U}) {
        const StateSpace s(1, N);
        const QuantumState g = project_gaussian(s);
        CHECK(g.norm() == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t j = 1; j < N; j += N / 17 + 1) {
            CHECK(g[j].imag() == 0.0);
            CHECK(std::abs(g[j] - g[N - j]) < 1e-15);
        }
    }
    CHECK_THROWS_AS(project_gaussian(StateSpace(1, 13)), PreconditionError);
}

TEST_CASE("tensor of basis vectors is a basis vector") {
    const StateSpace s(1, 5);
    const QuantumState t = tensor(QuantumState::basis(s, 2), QuantumState::basis(s, 4));
    CHECK(t.space().dimension() == 25);
    for (std::size_t i = 0; i < 25; ++i) {
        CHECK(t[i] == (i == 2 * 5 + 4 ? cplx(1.0) : cplx(0.0)));
    }
}

TEST_CASE("position density of a basis vector") {
    const StateSpace s(2, 6);
    const QuantumState e = QuantumState::basis(s, 1 * 6 + 4);
    const DensityGrid g = position_density(e);
    CHECK(g.at(1, 4) == 1.0);
    double total = 0.0;
    for (double v : g.values) {
        total += v;
    }
    CHECK(total == 1.0);
    const DensityGrid c = position_density(e, true);
    CHECK(c.at(4, 1) == 1.0);
}

}
