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

#include <cstring>
#include <memory>
#include <string>

#include <json.hpp>

#include "catmap/catmap.h"

namespace {

using json = nlohmann::json;

struct MatrixHandle {
    cm_matrix *m = nullptr;
    explicit MatrixHandle(const char *text) {
        REQUIRE(cm_matrix_parse(text, &m) == CM_OK);
    }
    ~MatrixHandle() { cm_matrix_free(m); }
    MatrixHandle(const MatrixHandle &) = delete;
    MatrixHandle &operator=(const MatrixHandle &) = delete;
};

json take_json(char *s) {
    REQUIRE(s != nullptr);
    json j = json::parse(s);
    cm_string_free(s);
    return j;
}

} // namespace

TEST_SUITE("capi") {

TEST_CASE("version and error reporting") {
    CHECK(std::strlen(cm_version()) > 0);
    cm_matrix *m = nullptr;
    CHECK(cm_matrix_parse("1,2;3", &m) == CM_ERR_PRECONDITION);
    CHECK(m == nullptr);
    CHECK(std::string(cm_last_error()).size() > 0);
    CHECK(cm_matrix_parse(nullptr, &m) == CM_ERR_ARGUMENT);
    CHECK(cm_matrix_parse("2,1;1,1", nullptr) == CM_ERR_ARGUMENT);
    // Parsing accepts any square matrix; symplectic checks happen on use.
    REQUIRE(cm_matrix_parse("2,0;0,1", &m) == CM_OK);
    std::uint64_t p = 0;
    CHECK(cm_quantum_period(m, 8, &p) == CM_ERR_PRECONDITION);
    char *out = nullptr;
    REQUIRE(cm_matrix_report(m, 0, &out) == CM_OK);
    CHECK(take_json(out)["symplectic"] == false);
    cm_matrix_free(m);
    cm_matrix_free(nullptr);
    cm_string_free(nullptr);
}

TEST_CASE("matrix report and periods") {
    MatrixHandle a("2,1;1,1");
    CHECK(cm_matrix_side(a.m) == 2);
    char *out = nullptr;
    REQUIRE(cm_matrix_report(a.m, 144, &out) == CM_OK);
    const json r = take_json(out);
    CHECK(r["symplectic"] == true);
    CHECK(r["hyperbolic"] == true);

    std::uint64_t p = 0;
    REQUIRE(cm_quantum_period(a.m, 144, &p) == CM_OK);
    CHECK(p == 12);
    REQUIRE(cm_periods(a.m, 6, &out) == CM_OK);
    const json per = take_json(out);
    CHECK(per["N"] == 144);
    CHECK(per["P"] == 12);

    double phase = 0.0;
    double defect = 1.0;
    REQUIRE(cm_period_phase(a.m, 144, &p, &phase, &defect) == CM_OK);
    CHECK(defect < 1e-8);
    double eg = 1.0;
    REQUIRE(cm_egorov_defect(a.m, 144, 3, &eg) == CM_OK);
    CHECK(eg < 1e-10);

    const long long entries[4] = {1, 1, 0, 1};
    cm_matrix *u = nullptr;
    REQUIRE(cm_matrix_from_entries(2, entries, &u) == CM_OK);
    CHECK(cm_quantum_period(u, 8, &p) == CM_ERR_PRECONDITION);
    cm_matrix_free(u);
}

TEST_CASE("scar handle lifecycle") {
    MatrixHandle b("2,1;1,1");
    cm_scar *s = nullptr;
    CHECK(cm_scar_build(b.m, 4, &s) == CM_ERR_PRECONDITION);
    REQUIRE(cm_scar_build(b.m, 6, &s) == CM_OK);
    cm_scar_summary sum{};
    REQUIRE(cm_scar_get_summary(s, &sum) == CM_OK);
    CHECK(sum.N == 144);
    CHECK(sum.P == 12);
    double res = 1.0;
    REQUIRE(cm_scar_eigen_residual(s, 1, &res) == CM_OK);
    CHECK(res < 1e-8);
    const long long j[2] = {0, 0};
    double re = 0.0;
    double im = 0.0;
    REQUIRE(cm_scar_matrix_element(s, j, j, &re, &im) == CM_OK);
    CHECK(re == doctest::Approx(sum.norm2));
    std::vector<double> row(sum.N);
    REQUIRE(cm_scar_density_row(s, 0, 1, row.data()) == CM_OK);
    CHECK(cm_scar_density_row(s, sum.N, 1, row.data()) != CM_OK);
    double mass = 0.0;
    double area = 0.0;
    REQUIRE(cm_scar_band_mass(s, &mass, &area) == CM_OK);
    CHECK(mass > 3.0 * area);
    cm_scar_free(s);
}

TEST_CASE("overlaps and Galois entry points") {
    MatrixHandle a("2,1;1,1");
    double re = 0.0;
    double im = 0.0;
    REQUIRE(cm_overlap_closed_form(a.m, 0.0, 0.0, 0.001, &re, &im) == CM_OK);
    CHECK(re == doctest::Approx(std::sqrt(2.0 / 3.0)));
    double s1 = 0.0;
    REQUIRE(cm_s1((3.0 + std::sqrt(5.0)) / 2.0, &s1) == CM_OK);
    CHECK(s1 > 3.0);

    char *out = nullptr;
    REQUIRE(cm_galois_certify_poly("1,-3,1", 50, &out) == CM_OK);
    CHECK(take_json(out)["verdict"] == "certified_wreath");
    REQUIRE(cm_galois_certify_poly("1,-2,1", 50, &out) == CM_OK);
    CHECK(take_json(out)["verdict"] == "contradicted");
    MatrixHandle t("0,0,2,1;0,0,1,1;-2,-1,0,0;-1,-1,0,0");
    REQUIRE(cm_galois_power_scan(t.m, 3, 200, &out) == CM_OK);
    CHECK(take_json(out)["k0"] == 2);
    REQUIRE(cm_sl2_census(5, &out) == CM_OK);
    CHECK(take_json(out)["total"] == 120);
    CHECK(cm_galois_census(4, 1, &out) == CM_ERR_PRECONDITION);
}

TEST_CASE("uncertainty entry points") {
    char *out = nullptr;
    REQUIRE(cm_fup_porosity_cantor(6, 1, 1.0 / 9.0, 1.0 / 729.0, 1.0, 0, 0.0, &out) == CM_OK);
    CHECK(take_json(out)["porous"] == true);
    double n = 0.0;
    REQUIRE(cm_fup_norm_cantor(3, &n) == CM_OK);
    CHECK(n > 0.0);
    CHECK(n < 1.0);
    REQUIRE(cm_scaling(1, 1, 0.75, 8, 12, &out) == CM_OK);
    CHECK(take_json(out)["passed"] == true);
    CHECK(cm_scaling(7, 1, 0.75, 0, 0, &out) == CM_ERR_PRECONDITION);
    CHECK(cm_fup_porosity_cantor(3, 3, 0.1, 0.1, 1.0, 0, 0.0, &out) == CM_ERR_PRECONDITION);
    CHECK(cm_scaling(0, 1, 0.75, 4, 9, nullptr) == CM_ERR_ARGUMENT);
}

TEST_CASE("unsupported inputs are distinguished from precondition failures") {
    MatrixHandle shear("1,-1;0,1");
    double d = 0.0;
    CHECK(cm_egorov_defect(shear.m, 12, 1, &d) == CM_ERR_UNSUPPORTED);
}

}
