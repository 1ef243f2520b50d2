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
#include "catmap/scars.hpp"
#include "support.hpp"

using namespace catmap;
using catmap::testing::cat;
using catmap::testing::sl2;

namespace {

const ScarEnsemble &scar6() {
    static const ScarEnsemble s = build_scar(make_scar_config(cat(), 6));
    return s;
}

} // namespace

TEST_SUITE("scars") {

TEST_CASE("autocorrelation and S1") {
    const double lambda = (3.0 + std::sqrt(5.0)) / 2.0;
    CHECK(gaussian_autocorrelation(lambda, 0) == doctest::Approx(1.0));
    CHECK(gaussian_autocorrelation(lambda, 1) == doctest::Approx(std::sqrt(2.0 / 3.0)));
    CHECK(gaussian_autocorrelation(lambda, -3) == gaussian_autocorrelation(lambda, 3));
    double direct = 1.0;
    for (int t = 1; t < 200; ++t) {
        direct += 2.0 * std::pow(gaussian_autocorrelation(lambda, t), 2);
    }
    CHECK(s1(lambda) == doctest::Approx(direct).epsilon(1e-14));
    CHECK_THROWS_AS(s1(1.0), PreconditionError);
}

TEST_CASE("closed-form overlap at the origin") {
    const double h = 1.0 / (2.0 * std::numbers::pi * 144.0);
    const cplx z = overlap_closed_form(cat(), {0.0, 0.0}, h);
    CHECK(std::abs(z - std::sqrt(2.0 / 3.0)) < 1e-14);
    const cplx q = overlap_quadrature(cat(), {0.0, 0.0}, h);
    CHECK(std::abs(q - z) < 1e-10);
    CHECK_THROWS_AS(overlap_closed_form(sl2(1, 1, 0, 1), {0.0, 0.0}, h), UnsupportedInput);
}

TEST_CASE("closed-form overlap matches the torus overlap for small shifts") {
    // At N = 144 the periodized Gaussians differ from their plane versions
    // by far less than 1e-12 near the origin, so the torus inner product is an
    // independent oracle for lattice shifts omega = j / N.
    const std::uint64_t N = 144;
    const StateSpace s(1, N);
    const QuantumState g = project_gaussian(s);
    const QuantumState mg = metaplectic_sl2(s, cat()).apply(g);
    for (const LatticeVector &j : {LatticeVector{0, 0}, LatticeVector{1, 0},
                                   LatticeVector{0, 2}, LatticeVector{-3, 1},
                                   LatticeVector{5, -4}}) {
        std::vector<cplx> ug(N);
        translation(s, j).apply(g.coeffs(), ug);
        const cplx torus = inner(std::span<const cplx>(ug), mg.coeffs());
        const Vec2 w{static_cast<double>(j[0]) / N, static_cast<double>(j[1]) / N};
        const cplx closed = overlap_closed_form(cat(), w, s.h());
        CHECK(std::abs(torus - closed) < 1e-10);
    }
}

TEST_CASE("quadrature agrees with the closed form on seeded samples") {
    const auto samples = overlap_samples(cat(), 20, 11);
    REQUIRE(samples.size() == 20);
    for (const auto &smp : samples) {
        CHECK(std::hypot(smp.omega[0], smp.omega[1]) <= 2.0);
        CHECK((smp.N == 34 || smp.N == 144));
        CHECK(smp.error < 1e-8);
    }
    const auto again = overlap_samples(cat(), 20, 11);
    CHECK(again[7].omega == samples[7].omega);
}

TEST_CASE("lattice overlap sum at q = 0") {
    const double h = 1.0 / (2.0 * std::numbers::pi * 144.0);
    const LatticeSum ls = lattice_overlap_sum(cat(), 0, {0.0, 0.0}, h);
    CHECK(ls.origin_term == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ls.off_origin() < 1e-6);
}

TEST_CASE("scar configuration") {
    const ScarConfig c = make_scar_config(cat(), 6);
    CHECK(c.N == 144);
    CHECK(c.P == 12);
    CHECK(c.phase_defect < 1e-8);
    CHECK(c.lambda == doctest::Approx((3.0 + std::sqrt(5.0)) / 2.0));
    CHECK_THROWS_AS(make_scar_config(cat(), 4), PreconditionError);
    CHECK_THROWS_AS(make_scar_config(cat(), 5), PreconditionError);
}

TEST_CASE("factored norm, matrix elements and partial norms") {
    const ScarEnsemble &s = scar6();
    const QuantumState u = materialize(s);
    CHECK(u.norm2() == doctest::Approx(s.norm2()).epsilon(1e-12));
    const cplx m00 = matrix_element(s, {0, 0}, {0, 0});
    CHECK(std::abs(m00 - s.norm2()) < 1e-12);
    const long long half = static_cast<long long>(s.P() / 2);
    CHECK(s.partial_norm2(-half, s.P()) == doctest::Approx(s.norm2()).epsilon(1e-12));

    // Matrix elements from the factored form agree with the materialized state.
    const StateSpace sp(2, s.N());
    const TranslationOperator t(sp, {1, 0, 0, 2});
    std::vector<cplx> tu(u.size());
    t.apply(u.coeffs(), tu);
    const cplx direct = inner(std::span<const cplx>(tu), u.coeffs());
    CHECK(std::abs(direct - matrix_element(s, {1, 0}, {0, 2})) < 1e-10);
}

TEST_CASE("scar is an eigenvector of both propagators") {
    const ScarEnsemble &s = scar6();
    const QuantumState u = materialize(s);
    const cplx z = scar_eigenvalue(s.config());
    CHECK(std::abs(std::abs(z) - 1.0) < 1e-14);
    CHECK(eigen_residual(product_propagator(s), u, z) < 1e-8);
    CHECK(eigen_residual(tight_propagator(s), u, z) < 1e-8);
    CHECK(std::abs(rayleigh_quotient(product_propagator(s), u) - z) < 1e-8);
}

TEST_CASE("measure targets and density") {
    CHECK(measure_target({0, 0}, {0, 0}) == 1.0);
    CHECK(measure_target({0, 0}, {1, 0}) == 0.5);
    CHECK(measure_target({0, 2}, {0, 0}) == 0.5);
    CHECK(measure_target({1, 0}, {1, 0}) == 0.0);

    const ScarEnsemble &s = scar6();
    std::vector<double> row(s.N());
    double total = 0.0;
    for (std::uint64_t r = 0; r < s.N(); ++r) {
        s.density_row(r, false, row);
        for (double v : row) {
            CHECK(v >= 0.0);
            total += v;
        }
    }
    CHECK(total == doctest::Approx(s.norm2()).epsilon(1e-12));
    const BandMass bm = axis_band_mass(s);
    CHECK(bm.mass_fraction > 3.0 * bm.area_fraction);
    CHECK(bm.mass_fraction <= 1.0 + 1e-12);
}

TEST_CASE("scan rows cover the window") {
    const auto rows = semiclassical_scan(scar6(), 1);
    CHECK(rows.size() == 81);
    for (const auto &r : rows) {
        CHECK(r.target == measure_target(r.j, r.k));
        CHECK(r.error == doctest::Approx(std::abs(r.ratio - r.target)));
    }
}

}
