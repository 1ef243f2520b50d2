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

#include <random>

#include "catmap/error.hpp"
#include "catmap/galois.hpp"
#include "support.hpp"

using namespace catmap;
using catmap::testing::big;
using catmap::testing::cat;
using catmap::testing::sl2;
using catmap::testing::tight_block;

namespace {

PolyModP random_poly(std::uint32_t ell, int degree, std::mt19937_64 &rng) {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(degree) + 1);
    for (auto &x : c) {
        x = static_cast<std::uint32_t>(rng() % ell);
    }
    c.back() = 1;
    return {ell, c};
}

} // namespace

TEST_SUITE("galois") {

TEST_CASE("polynomial arithmetic over F_ell") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint32_t ell = std::vector<std::uint32_t>{2, 3, 5, 7, 13}[trial % 5];
        const PolyModP a = random_poly(ell, 1 + static_cast<int>(rng() % 8), rng);
        const PolyModP b = random_poly(ell, 1 + static_cast<int>(rng() % 4), rng);
        const auto [q, r] = a.divmod(b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
        const PolyModP g = gcd(a * b, b);
        CHECK(g == b.monic());
    }
    const PolyModP x = PolyModP::x(7);
    const PolyModP m(7, {3, 0, 0, 1});
    // x^3 + 3 has no root mod 7 (4 is not a cube), so it is irreducible and
    // x^(7^3) = x modulo it.
    CHECK(x.powmod(343, m) == x);
    CHECK(PolyModP(5, {1, 2, 3}).derivative() == PolyModP(5, {2, 1}));
}

TEST_CASE("factor types") {
    const CycleType a = factor_type(PolyModP(5, {1, 0, 1}));
    CHECK(a.degrees == std::vector<unsigned>{1, 1});
    CHECK(a.squarefree);
    const CycleType b = factor_type(PolyModP(5, {1, 1, 1}));
    CHECK(b.degrees == std::vector<unsigned>{2});
    CHECK(b.squarefree);
    CHECK(b.even_cycle_class() == 2);
    CHECK_FALSE(factor_type(PolyModP(5, {0, 0, 1})).squarefree);
    CHECK(factor_type(PolyModP(7, {3, 0, 0, 1})).degrees == std::vector<unsigned>{3});
}

TEST_CASE("factor type degrees sum to the degree") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const PolyModP f = random_poly(11, 1 + static_cast<int>(rng() % 9), rng);
        const CycleType t = factor_type(f);
        unsigned total = 0;
        for (unsigned d : t.degrees) {
            total += d;
        }
        if (t.squarefree) {
            CHECK(total == static_cast<unsigned>(f.degree()));
        }
        CHECK(t.squarefree == (gcd(f, f.derivative()).degree() == 0));
    }
}

TEST_CASE("reciprocal census") {
    const CensusResult r = reciprocal_census(5, 1);
    CHECK(r.total == 5);
    REQUIRE(r.classes.size() == 1);
    CHECK(r.classes[0].k == 1);
    CHECK(r.classes[0].count == 2);
    const CensusResult r2 = reciprocal_census(7, 2);
    CHECK(r2.total == 49);
    std::uint64_t sum = 0;
    for (const auto &[label, count] : r2.by_type) {
        sum += count;
    }
    CHECK(sum == r2.total);
    CHECK(census_main_term(7, 2, 2) == doctest::Approx(49.0 / 4.0));
}

TEST_CASE("SL2 census") {
    const auto c5 = sl2_census(5);
    CHECK(c5[0] == 30);
    CHECK(c5[2] == 25);
    std::uint64_t total = 0;
    for (auto v : c5) {
        total += v;
    }
    CHECK(total == 120);
}

TEST_CASE("integer polynomial helpers") {
    const IntPoly f = parse_poly("1,-3,1");
    CHECK(f == big({1, -3, 1}));
    CHECK(poly_to_string(f) == "x^2 - 3x + 1");
    const IntPoly g = poly_mul(f, big({1, 1}));
    CHECK(poly_div_exact(g, big({1, 1})) == f);
    CHECK_FALSE(poly_div_exact(g, big({2, 1})).has_value());
    CHECK_THROWS_AS(parse_poly("1,,2"), PreconditionError);
}

TEST_CASE("integer factorization search") {
    const IntPoly sq = poly_mul(big({1, 7, 1}), big({1, 7, 1}));
    const auto fac = find_integer_factorization(sq);
    REQUIRE(fac.has_value());
    CHECK(fac->product() == sq);
    REQUIRE(fac->factors.size() == 1);
    CHECK(fac->factors[0].first == big({1, 7, 1}));
    CHECK(fac->factors[0].second == 2);
    CHECK_FALSE(find_integer_factorization(big({1, -3, 1})).has_value());
    const IntPoly mixed = poly_mul(poly_mul(big({-1, 1}), big({1, 0, 1})), big({1, -5, 1}));
    const auto f2 = find_integer_factorization(mixed);
    REQUIRE(f2.has_value());
    CHECK(f2->product() == mixed);
    CHECK(f2->factors.size() == 3);
}

TEST_CASE("certification verdicts") {
    const auto c = certify_wreath(big({1, -3, 1}), 50);
    CHECK(c.verdict == Verdict::CertifiedWreath);
    CHECK(c.witnesses.count(2) == 1);
    CHECK(certify_wreath(big({1, -2, 1}), 50).verdict == Verdict::Contradicted);
    const auto t = certify_wreath(char_poly(tight_block().matrix()).coeffs, 200);
    CHECK(t.verdict != Verdict::CertifiedWreath);
    CHECK(required_cycle_classes(1) == std::vector<unsigned>{2});
}

TEST_CASE("power scans") {
    const PowerScan t = power_scan(tight_block(), 4, 200);
    REQUIRE(t.k0.has_value());
    CHECK(*t.k0 == 2);
    const PowerVerdict &p2 = t.powers.at(1);
    CHECK(p2.status == PowerStatus::Reducible);
    REQUIRE(p2.factorization.has_value());
    CHECK(p2.factorization->factors.size() == 1);
    CHECK(p2.factorization->factors[0].first == big({1, 7, 1}));
    CHECK(p2.factorization->factors[0].second == 2);

    const PowerScan c = power_scan(cat(), 10, 200);
    CHECK_FALSE(c.k0.has_value());
    for (const auto &p : c.powers) {
        CHECK(p.status == PowerStatus::Irreducible);
    }

    // char poly x^2 + 1; its square is (x + 1)^2.
    const PowerScan r = power_scan(sl2(0, -1, 1, 0), 3, 50);
    REQUIRE(r.k0.has_value());
    CHECK(*r.k0 == 2);
}

TEST_CASE("random symplectic words") {
    for (unsigned n = 1; n <= 3; ++n) {
        for (const auto &g : sp_generators(n)) {
            CHECK(is_symplectic(g.matrix()));
        }
        const auto words = sample_sp(n, 12, 20, 4);
        CHECK(words.size() == 20);
        for (const auto &w : words) {
            CHECK(is_symplectic(w.matrix()));
            CHECK(char_poly(w.matrix()).is_reciprocal());
        }
    }
    for (const auto &w : sample_sp(2, 0, 3, 1)) {
        CHECK(w.matrix().is_identity());
    }
    const auto a = sample_sp(2, 20, 5, 99);
    const auto b = sample_sp(2, 20, 5, 99);
    CHECK(a == b);
    CHECK_THROWS_AS(sample_sp(4, 5, 1, 1), PreconditionError);
}

}
