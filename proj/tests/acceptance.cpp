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

// Acceptance runner: one PASS/FAIL line per criterion. With no arguments all
// criteria run; otherwise only the listed ids. Exit status is nonzero when any
// selected criterion fails, including by exceeding its time budget.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "catmap/fup.hpp"
#include "catmap/galois.hpp"
#include "catmap/metaplectic.hpp"
#include "catmap/scars.hpp"
#include "catmap/symplectic.hpp"

using namespace catmap;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char *title;
    double budget_seconds;
    std::function<Outcome()> run;
};

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

SymplecticMatrix cat() { return SymplecticMatrix(IntMatrix{{2, 1}, {1, 1}}); }

SymplecticMatrix tight_block() {
    return SymplecticMatrix(parse_matrix("0,0,2,1;0,0,1,1;-2,-1,0,0;-1,-1,0,0"));
}

double max_abs(const DenseMatrix &m) { return m.cwiseAbs().maxCoeff(); }

Outcome exact_egorov() {
    const double d = egorov_defect(metaplectic_sl2(StateSpace(1, 144), cat()), 3);
    return {d < 1e-10, "defect " + fmt("%.3e", d)};
}

Outcome unitarity_multiplicativity() {
    double worst_u = 0.0;
    double worst_m = 0.0;
    for (std::uint64_t N : {34U, 144U}) {
        const StateSpace s(1, N);
        const Propagator m = metaplectic_sl2(s, cat());
        worst_u = std::max(worst_u, unitarity_defect(m));
        const DenseMatrix mm = *compose(m, m).dense();
        worst_m = std::max(worst_m, max_abs(mm - *metaplectic_sl2(s, cat() * cat()).dense()));
    }
    return {worst_u < 1e-10 && worst_m < 1e-9,
            "unitarity " + fmt("%.3e", worst_u) + ", multiplicativity " + fmt("%.3e", worst_m)};
}

Outcome period_law() {
    bool ok = true;
    std::string periods;
    for (unsigned k : {2U, 4U, 6U, 8U, 10U, 12U}) {
        const std::uint64_t N = to_u64(admissible_N(cat(), k).N, "N_k");
        const std::uint64_t p = quantum_period(cat(), N);
        ok = ok && p == 2 * k;
        periods += (periods.empty() ? "" : ",") + std::to_string(p);
    }
    const PeriodPhase pp = period_phase(metaplectic_sl2(StateSpace(1, 144), cat()), 12);
    ok = ok && pp.defect < 1e-8;
    return {ok, "P = [" + periods + "], scalar defect " + fmt("%.3e", pp.defect)};
}

Outcome closed_form_overlap() {
    const auto samples = overlap_samples(cat(), 100, 20260101);
    double worst = 0.0;
    for (const auto &s : samples) {
        worst = std::max(worst, s.error);
    }
    return {worst < 1e-8, "max error " + fmt("%.3e", worst) + " over 100 samples"};
}

Outcome autocorrelation() {
    const StateSpace s(1, 144);
    const Propagator m = metaplectic_sl2(s, cat());
    const QuantumState g = project_gaussian(s);
    const double lambda = cat().expansion_rate();
    double worst = 0.0;
    std::string per_t;
    for (long long t = -4; t <= 4; ++t) {
        QuantumState x = g;
        for (long long i = 0; i < std::abs(t); ++i) {
            x = t > 0 ? m.apply(x) : m.apply_inverse(x);
        }
        const double err = std::abs(inner(x, g) - gaussian_autocorrelation(lambda, t));
        worst = std::max(worst, err);
        if (t >= 0) {
            per_t += (t == 0 ? "" : ", ") + std::string("t=") + std::to_string(t) + ": " +
                     fmt("%.2e", err);
        }
    }
    return {worst < 1e-6, per_t};
}

Outcome scar_eigenresidual() {
    const ScarEnsemble scar = build_scar(make_scar_config(cat(), 6));
    const QuantumState u = materialize(scar);
    const cplx z = scar_eigenvalue(scar.config());
    const double r1 = eigen_residual(product_propagator(scar), u, z);
    const double r2 = eigen_residual(tight_propagator(scar), u, z);
    return {r1 < 1e-8 && r2 < 1e-8,
            "product " + fmt("%.3e", r1) + ", tight " + fmt("%.3e", r2)};
}

Outcome norm_limit() {
    std::map<unsigned, double> err;
    for (unsigned k : {6U, 12U}) {
        const ScarEnsemble scar = build_scar(make_scar_config(cat(), k));
        err[k] = std::abs(scar.norm2() - s1(scar.config().lambda));
    }
    return {err[12] < err[6],
            "k=6 " + fmt("%.3e", err[6]) + ", k=12 " + fmt("%.3e", err[12])};
}

Outcome measure_scan() {
    // Cases: 0 = (0,0), 1 = (0,k), 2 = (j,0), 3 = (j,k).
    auto case_of = [](const ScanRow &r) {
        const bool j0 = r.j[0] == 0 && r.j[1] == 0;
        const bool k0 = r.k[0] == 0 && r.k[1] == 0;
        return j0 ? (k0 ? 0 : 1) : (k0 ? 2 : 3);
    };
    std::map<unsigned, std::array<double, 4>> by_case;
    std::map<unsigned, double> worst;
    for (unsigned k : {6U, 12U}) {
        const ScarEnsemble scar = build_scar(make_scar_config(cat(), k));
        std::array<double, 4> e{};
        for (const auto &row : semiclassical_scan(scar, 2)) {
            auto &slot = e[static_cast<std::size_t>(case_of(row))];
            slot = std::max(slot, row.error);
        }
        by_case[k] = e;
        worst[k] = *std::max_element(e.begin(), e.end());
    }
    const bool bound6 = worst[6] < 0.15;
    const bool trend = worst[12] < worst[6];
    std::string detail = "k=6 per case [";
    for (int c = 0; c < 4; ++c) {
        detail += (c ? ", " : "") + fmt("%.4f", by_case[6][c]);
    }
    detail += "], k=12 worst " + fmt("%.4f", worst[12]);
    detail += bound6 ? "" : "; k=6 bound 0.15 not met";
    detail += trend ? "" : "; no decrease from k=6 to k=12";
    return {bound6 && trend, detail};
}

Outcome band_concentration() {
    const ScarEnsemble scar = build_scar(make_scar_config(cat(), 6));
    const BandMass bm = axis_band_mass(scar);
    return {bm.mass_fraction > 3.0 * bm.area_fraction,
            "mass " + fmt("%.4f", bm.mass_fraction) + " vs 3 x area " +
                fmt("%.4f", 3.0 * bm.area_fraction)};
}

Outcome galois_census() {
    double worst_ratio = 0.0;
    for (std::uint32_t ell : {5U, 7U, 11U, 13U}) {
        for (unsigned n : {1U, 2U}) {
            const CensusResult r = reciprocal_census(ell, n);
            const double bound = 4.0 * std::pow(static_cast<double>(ell), n - 1.0);
            for (const auto &c : r.classes) {
                worst_ratio = std::max(worst_ratio, c.abs_error() / bound);
            }
        }
    }
    return {worst_ratio <= 1.0, "worst |count - main| / bound = " + fmt("%.3f", worst_ratio)};
}

Outcome sl2_counts() {
    bool ok = true;
    std::string detail;
    for (std::uint32_t ell : {5U, 7U}) {
        const auto counts = sl2_census(ell);
        std::uint64_t total = 0;
        double dev = 0.0;
        for (auto c : counts) {
            total += c;
            dev = std::max(dev, std::abs(static_cast<double>(c) - ell * ell));
        }
        const std::uint64_t order = static_cast<std::uint64_t>(ell) * (ell * ell - 1);
        ok = ok && total == order && dev <= 2.0 * ell;
        detail += (detail.empty() ? "" : "; ") + std::string("ell=") + std::to_string(ell) +
                  " total " + std::to_string(total) + " max deviation " + fmt("%.0f", dev);
    }
    return {ok, detail};
}

Outcome generic_wreath() {
    const auto samples = sample_sp(2, 20, 500, 20260101);
    std::size_t wreath = 0;
    for (const auto &a : samples) {
        if (certify_wreath(char_poly(a.matrix()).coeffs, 200).verdict ==
            Verdict::CertifiedWreath) {
            ++wreath;
        }
    }
    const double rate = static_cast<double>(wreath) / samples.size();
    const Verdict tv = certify_wreath(char_poly(tight_block().matrix()).coeffs, 200).verdict;
    const PowerScan scan = power_scan(tight_block(), 4, 200);
    bool fact_ok = false;
    if (scan.k0 && *scan.k0 == 2) {
        const auto &f = scan.powers.at(1).factorization;
        fact_ok = f && f->factors.size() == 1 && f->factors[0].second == 2 &&
                  poly_to_string(f->factors[0].first) == "x^2 + 7x + 1";
    }
    return {rate >= 0.95 && tv != Verdict::CertifiedWreath && fact_ok,
            "rate " + fmt("%.3f", rate) + ", tight example " + to_string(tv) +
                ", k0 = 2 with (x^2 + 7x + 1)^2: " + (fact_ok ? "yes" : "no")};
}

Outcome power_irreducibility() {
    const auto samples = sample_sp(2, 20, 200, 777);
    std::size_t used = 0;
    std::size_t failures = 0;
    for (const auto &a : samples) {
        if (used == 50) {
            break;
        }
        if (certify_wreath(char_poly(a.matrix()).coeffs, 200).verdict !=
            Verdict::CertifiedWreath) {
            continue;
        }
        ++used;
        for (const auto &p : power_scan(a, 5, 200).powers) {
            failures += p.status != PowerStatus::Irreducible ? 1 : 0;
        }
    }
    return {used == 50 && failures == 0, std::to_string(used) + " certified samples, " +
                                             std::to_string(failures) +
                                             " powers not certified irreducible"};
}

Outcome basic_scaling() {
    bool ok = true;
    std::string detail;
    for (double delta : {0.6, 0.75}) {
        const ScalingVerdict v = scaling_experiment(ScalingKind::Basic, {1, delta, 8, 14});
        ok = ok && v.passed;
        detail += (detail.empty() ? "" : "; ") + std::string("delta ") + fmt("%.2f", delta) +
                  ": fitted " + fmt("%.4f", v.run.fitted_slope) + " theory " +
                  fmt("%.4f", *v.run.theory_slope);
    }
    return {ok, detail};
}

Outcome fup_decay() {
    const ScalingVerdict v = scaling_experiment(ScalingKind::Fup, {1, 0.0, 4, 9});
    return {v.passed, "beta " + fmt("%.4f", v.run.fitted_slope) + ", norms " +
                          fmt("%.4f", v.run.norms.front()) + " -> " +
                          fmt("%.4f", v.run.norms.back())};
}

const std::vector<Criterion> &criteria() {
    static const std::vector<Criterion> all{
        {1, "exact Egorov at N=144", 5, exact_egorov},
        {2, "unitarity and multiplicativity", 5, unitarity_multiplicativity},
        {3, "period law", 10, period_law},
        {4, "closed-form overlap", 10, closed_form_overlap},
        {5, "Gaussian autocorrelation", 5, autocorrelation},
        {6, "scar eigenresidual", 30, scar_eigenresidual},
        {7, "norm limit trend", 600, norm_limit},
        {8, "semiclassical measure scan", 900, measure_scan},
        {9, "axis concentration", 60, band_concentration},
        {10, "reciprocal census", 30, galois_census},
        {11, "SL2 trace census", 30, sl2_counts},
        {12, "generic wreath Galois group", 120, generic_wreath},
        {13, "power irreducibility", 120, power_irreducibility},
        {14, "basic uncertainty scaling", 120, basic_scaling},
        {15, "FUP decay", 120, fup_decay},
    };
    return all;
}

} // namespace

int main(int argc, char **argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) {
        wanted.push_back(std::atoi(argv[i]));
    }
    int failed = 0;
    for (const auto &c : criteria()) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) {
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.budget_seconds;
        const bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("criterion %2d %s  %s: %s (%.2fs of %.0fs%s)\n", c.id, pass ? "PASS" : "FAIL",
                    c.title, o.detail.c_str(), secs, c.budget_seconds,
                    in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
