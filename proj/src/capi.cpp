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

#include "catmap/catmap.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "catmap/error.hpp"
#include "catmap/fup.hpp"
#include "catmap/galois.hpp"
#include "catmap/metaplectic.hpp"
#include "catmap/parallel.hpp"
#include "catmap/scars.hpp"
#include "catmap/symplectic.hpp"

using json = nlohmann::ordered_json;
using namespace catmap;

struct cm_matrix {
    IntMatrix m;
};

struct cm_scar {
    ScarEnsemble ens;
};

namespace {

thread_local std::string g_last_error;

class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

void need(const void *p, const char *name) {
    if (p == nullptr) {
        throw ArgumentError(std::string(name) + " must not be null");
    }
}

template <class F> cm_status guarded(F &&f) {
    try {
        f();
        g_last_error.clear();
        return CM_OK;
    } catch (const ArgumentError &e) {
        g_last_error = e.what();
        return CM_ERR_ARGUMENT;
    } catch (const UnsupportedInput &e) {
        g_last_error = e.what();
        return CM_ERR_UNSUPPORTED;
    } catch (const PreconditionError &e) {
        g_last_error = e.what();
        return CM_ERR_PRECONDITION;
    } catch (const InvariantError &e) {
        g_last_error = e.what();
        return CM_ERR_INTERNAL;
    } catch (const std::bad_alloc &) {
        g_last_error = "out of memory";
        return CM_ERR_INTERNAL;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return CM_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return CM_ERR_INTERNAL;
    }
}

void emit(const json &j, char **out) {
    need(out, "output string");
    const std::string s = j.dump(2);
    char *buf = static_cast<char *>(std::malloc(s.size() + 1));
    if (buf == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
}

json big(const BigInt &v) {
    if (v.fits_slong_p()) {
        return v.get_si();
    }
    return v.get_str();
}

json poly_json(const IntPoly &p) {
    json arr = json::array();
    for (std::size_t i = p.size(); i-- > 0;) {
        arr.push_back(big(p[i]));
    }
    return arr;
}

json factorization_json(const std::optional<Factorization> &f) {
    if (!f) {
        return nullptr;
    }
    json arr = json::array();
    for (const auto &[poly, mult] : f->factors) {
        arr.push_back({{"factor", poly_to_string(poly)}, {"multiplicity", mult}});
    }
    return arr;
}

json certificate_json(const IntPoly &f, const GaloisCertificate &c) {
    json wit = json::object();
    for (const auto &[cls, w] : c.witnesses) {
        wit[std::to_string(cls)] = {{"ell", w.ell}, {"type", w.type.label()}};
    }
    return {{"poly", poly_to_string(f)},
            {"coefficients", poly_json(f)},
            {"verdict", to_string(c.verdict)},
            {"required_classes", c.required},
            {"witnesses", wit},
            {"primes_scanned", c.primes_scanned.size()},
            {"primes_skipped", c.primes_skipped},
            {"factorization", factorization_json(c.factorization)}};
}

SymplecticMatrix symplectic(const cm_matrix *m) {
    need(m, "matrix");
    return SymplecticMatrix(m->m);
}

json scaling_json(const ScalingVerdict &v, ScalingKind kind, unsigned d, double delta) {
    json j{{"kind", kind == ScalingKind::Fup ? "fup" : "basic"}};
    if (kind == ScalingKind::Basic) {
        j["d"] = d;
        j["delta"] = delta;
    }
    j["sizes"] = v.run.sizes;
    j["hs"] = v.run.hs;
    j["norms"] = v.run.norms;
    j["fitted_slope"] = v.run.fitted_slope;
    j["intercept"] = v.run.intercept;
    j["theory_slope"] = v.run.theory_slope ? json(*v.run.theory_slope) : json(nullptr);
    j["passed"] = v.passed;
    j["criterion"] = v.criterion;
    return j;
}

} // namespace

extern "C" {

const char *cm_version(void) { return "0.1.0"; }

const char *cm_last_error(void) { return g_last_error.c_str(); }

void cm_string_free(char *s) { std::free(s); }

cm_status cm_set_threads(unsigned threads) {
    return guarded([&] { set_thread_count(threads); });
}

cm_status cm_matrix_parse(const char *text, cm_matrix **out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = new cm_matrix{parse_matrix(text)};
    });
}

cm_status cm_matrix_from_entries(size_t side, const long long *entries, cm_matrix **out) {
    return guarded([&] {
        need(entries, "entries");
        need(out, "out");
        require(side >= 1 && side <= 64, "matrix side must lie in [1, 64]");
        IntMatrix m(side);
        for (std::size_t i = 0; i < side; ++i) {
            for (std::size_t j = 0; j < side; ++j) {
                m(i, j) = BigInt(std::to_string(entries[i * side + j]), 10);
            }
        }
        *out = new cm_matrix{std::move(m)};
    });
}

void cm_matrix_free(cm_matrix *m) { delete m; }

size_t cm_matrix_side(const cm_matrix *m) { return m == nullptr ? 0 : m->m.side(); }

cm_status cm_matrix_report(const cm_matrix *m, uint64_t N, char **json_out) {
    return guarded([&] {
        need(m, "matrix");
        json j{{"matrix", m->m.to_string()}, {"side", m->m.side()}};
        const bool symp = m->m.side() % 2 == 0 && is_symplectic(m->m);
        j["symplectic"] = symp;
        if (symp) {
            const SymplecticMatrix a(m->m);
            const bool hyp = is_hyperbolic(a);
            const CharPoly cp = char_poly(a.matrix());
            j["n"] = a.n();
            j["trace"] = big(a.trace());
            j["hyperbolic"] = hyp;
            j["char_poly"] = poly_to_string(cp.coeffs);
            j["char_poly_coefficients"] = poly_json(cp.coeffs);
            j["reciprocal"] = cp.is_reciprocal();
            j["phi_A"] = phi_A(a);
            j["expansion_rate"] = hyp ? json(a.expansion_rate()) : json(nullptr);
            if (N > 0) {
                j["N"] = N;
                const std::vector<Rational> theta(2 * a.n(), Rational(0));
                j["admissible"] = quantization_admissible(a, N, theta);
                j["quantum_period"] = hyp ? json(quantum_period(a, N)) : json(nullptr);
            }
        }
        emit(j, json_out);
    });
}

cm_status cm_quantum_period(const cm_matrix *m, uint64_t N, uint64_t *period) {
    return guarded([&] {
        need(period, "period");
        *period = quantum_period(symplectic(m), N);
    });
}

cm_status cm_periods(const cm_matrix *m, unsigned k, char **json_out) {
    return guarded([&] {
        const SymplecticMatrix a = symplectic(m);
        const AdmissibleN an = admissible_N(a, k);
        const std::uint64_t N = to_u64(an.N, "N_k");
        json j{{"A", a.matrix().to_string()},
               {"k", k},
               {"N", N},
               {"P", quantum_period(a, N)},
               {"even", an.even},
               {"admissible", an.admissible}};
        emit(j, json_out);
    });
}

cm_status cm_period_phase(const cm_matrix *m, uint64_t N, uint64_t *period,
                          double *phase, double *defect) {
    return guarded([&] {
        need(period, "period");
        need(phase, "phase");
        need(defect, "defect");
        const SymplecticMatrix a = symplectic(m);
        const std::uint64_t P = quantum_period(a, N);
        const Propagator M = metaplectic_sl2(StateSpace(1, N), a);
        const PeriodPhase pp = period_phase(M, P);
        *period = pp.period;
        *phase = pp.phase;
        *defect = pp.defect;
    });
}

cm_status cm_egorov_defect(const cm_matrix *m, uint64_t N, int window, double *defect) {
    return guarded([&] {
        need(defect, "defect");
        const SymplecticMatrix a = symplectic(m);
        *defect = egorov_defect(metaplectic_sl2(StateSpace(1, N), a), window);
    });
}

cm_status cm_scar_build(const cm_matrix *b, unsigned k, cm_scar **out) {
    return guarded([&] {
        need(out, "out");
        const ScarConfig cfg = make_scar_config(symplectic(b), k);
        *out = new cm_scar{build_scar(cfg)};
    });
}

void cm_scar_free(cm_scar *s) { delete s; }

cm_status cm_scar_get_summary(const cm_scar *s, cm_scar_summary *out) {
    return guarded([&] {
        need(s, "scar");
        need(out, "out");
        const ScarConfig &c = s->ens.config();
        out->N = c.N;
        out->P = c.P;
        out->k = c.k;
        out->phase = c.phase;
        out->phase_defect = c.phase_defect;
        out->lambda = c.lambda;
        out->norm2 = s->ens.norm2();
        out->s1 = s1(c.lambda);
    });
}

cm_status cm_scar_eigen_residual(const cm_scar *s, int tight, double *residual) {
    return guarded([&] {
        need(s, "scar");
        need(residual, "residual");
        const QuantumState u = materialize(s->ens);
        const Propagator p =
            tight != 0 ? tight_propagator(s->ens) : product_propagator(s->ens);
        *residual = eigen_residual(p, u, scar_eigenvalue(s->ens.config()));
    });
}

cm_status cm_scar_matrix_element(const cm_scar *s, const long long j[2],
                                 const long long k[2], double *re, double *im) {
    return guarded([&] {
        need(s, "scar");
        need(j, "j");
        need(k, "k");
        need(re, "re");
        need(im, "im");
        const cplx v = matrix_element(s->ens, {j[0], j[1]}, {k[0], k[1]});
        *re = v.real();
        *im = v.imag();
    });
}

cm_status cm_scar_scan(const cm_scar *s, int window, char **json_out) {
    return guarded([&] {
        need(s, "scar");
        const auto rows = semiclassical_scan(s->ens, window);
        json arr = json::array();
        double worst = 0.0;
        for (const auto &r : rows) {
            worst = std::max(worst, r.error);
            arr.push_back({{"j", r.j},
                           {"k", r.k},
                           {"ratio_re", r.ratio.real()},
                           {"ratio_im", r.ratio.imag()},
                           {"target", r.target},
                           {"error", r.error}});
        }
        json j{{"N", s->ens.N()}, {"P", s->ens.P()}, {"k", s->ens.config().k},
               {"window", window}, {"max_error", worst}, {"rows", arr}};
        emit(j, json_out);
    });
}

cm_status cm_scar_density_row(const cm_scar *s, uint64_t row, int centered, double *out) {
    return guarded([&] {
        need(s, "scar");
        need(out, "out");
        s->ens.density_row(row, centered != 0,
                           std::span<double>(out, static_cast<std::size_t>(s->ens.N())));
    });
}

cm_status cm_scar_band_mass(const cm_scar *s, double *mass_fraction,
                            double *area_fraction) {
    return guarded([&] {
        need(s, "scar");
        need(mass_fraction, "mass_fraction");
        need(area_fraction, "area_fraction");
        const BandMass bm = axis_band_mass(s->ens);
        *mass_fraction = bm.mass_fraction;
        *area_fraction = bm.area_fraction;
    });
}

cm_status cm_overlap_closed_form(const cm_matrix *a, double y, double eta, double h,
                                 double *re, double *im) {
    return guarded([&] {
        need(re, "re");
        need(im, "im");
        const cplx v = overlap_closed_form(symplectic(a), {y, eta}, h);
        *re = v.real();
        *im = v.imag();
    });
}

cm_status cm_overlap_quadrature(const cm_matrix *a, double y, double eta, double h,
                                double *re, double *im) {
    return guarded([&] {
        need(re, "re");
        need(im, "im");
        const cplx v = overlap_quadrature(symplectic(a), {y, eta}, h);
        *re = v.real();
        *im = v.imag();
    });
}

cm_status cm_overlap_test(const cm_matrix *a, unsigned samples, uint64_t seed,
                          char **json_out) {
    return guarded([&] {
        const auto rows = overlap_samples(symplectic(a), samples, seed);
        json arr = json::array();
        double worst = 0.0;
        for (const auto &r : rows) {
            worst = std::max(worst, r.error);
            arr.push_back({{"y", r.omega[0]},
                           {"eta", r.omega[1]},
                           {"N", r.N},
                           {"closed_re", r.closed.real()},
                           {"closed_im", r.closed.imag()},
                           {"quadrature_re", r.quadrature.real()},
                           {"quadrature_im", r.quadrature.imag()},
                           {"error", r.error}});
        }
        json j{{"samples", samples}, {"seed", seed}, {"max_error", worst}, {"rows", arr}};
        emit(j, json_out);
    });
}

cm_status cm_lattice_sum(const cm_matrix *a, long long q, double c1, double c2, double h,
                         char **json_out) {
    return guarded([&] {
        const LatticeSum ls = lattice_overlap_sum(symplectic(a), q, {c1, c2}, h);
        json j{{"q", q},     {"c", {c1, c2}},
               {"h", h},     {"total", ls.total},
               {"origin_term", ls.origin_term},
               {"off_origin", ls.off_origin()},
               {"terms", ls.terms}};
        emit(j, json_out);
    });
}

cm_status cm_gaussian_autocorrelation(double lambda, long long t, double *out) {
    return guarded([&] {
        need(out, "out");
        *out = gaussian_autocorrelation(lambda, t);
    });
}

cm_status cm_s1(double lambda, double *out) {
    return guarded([&] {
        need(out, "out");
        *out = s1(lambda);
    });
}

cm_status cm_galois_census(uint32_t ell, unsigned n, char **json_out) {
    return guarded([&] {
        const CensusResult r = reciprocal_census(ell, n);
        json classes = json::array();
        for (const auto &c : r.classes) {
            classes.push_back({{"k", c.k},
                               {"count", c.count},
                               {"main_term", c.main_term},
                               {"abs_error", c.abs_error()}});
        }
        json types = json::object();
        for (const auto &[label, count] : r.by_type) {
            types[label] = count;
        }
        json j{{"ell", ell}, {"n", n}, {"total", r.total},
               {"classes", classes}, {"by_type", types}};
        emit(j, json_out);
    });
}

cm_status cm_sl2_census(uint32_t ell, char **json_out) {
    return guarded([&] {
        const auto counts = sl2_census(ell);
        std::uint64_t total = 0;
        for (auto c : counts) {
            total += c;
        }
        const std::uint64_t l = ell;
        json j{{"ell", ell},
               {"total", total},
               {"group_order", l * (l * l - 1)},
               {"counts", counts}};
        emit(j, json_out);
    });
}

cm_status cm_galois_certify_poly(const char *coeffs, uint32_t prime_bound,
                                 char **json_out) {
    return guarded([&] {
        need(coeffs, "coeffs");
        const IntPoly f = parse_poly(coeffs);
        emit(certificate_json(f, certify_wreath(f, prime_bound)), json_out);
    });
}

cm_status cm_galois_certify_matrix(const cm_matrix *a, uint32_t prime_bound,
                                   char **json_out) {
    return guarded([&] {
        const SymplecticMatrix s = symplectic(a);
        const IntPoly f = char_poly(s.matrix()).coeffs;
        json j = certificate_json(f, certify_wreath(f, prime_bound));
        j["matrix"] = s.matrix().to_string();
        emit(j, json_out);
    });
}

cm_status cm_galois_power_scan(const cm_matrix *a, unsigned m_max, uint32_t prime_bound,
                               char **json_out) {
    return guarded([&] {
        const SymplecticMatrix s = symplectic(a);
        const PowerScan scan = power_scan(s, m_max, prime_bound);
        json powers = json::array();
        for (const auto &p : scan.powers) {
            powers.push_back({{"m", p.m},
                              {"poly", poly_to_string(p.poly)},
                              {"status", to_string(p.status)},
                              {"witness_prime",
                               p.witness_prime != 0 ? json(p.witness_prime) : json(nullptr)},
                              {"factorization", factorization_json(p.factorization)}});
        }
        json j{{"matrix", s.matrix().to_string()},
               {"m_max", m_max},
               {"prime_bound", prime_bound},
               {"k0", scan.k0 ? json(*scan.k0) : json(nullptr)},
               {"powers", powers}};
        emit(j, json_out);
    });
}

cm_status cm_galois_sample(unsigned n, unsigned word_length, unsigned count,
                           uint64_t seed, uint32_t prime_bound, char **json_out) {
    return guarded([&] {
        const auto mats = sample_sp(n, word_length, count, seed);
        std::vector<std::string> verdicts(mats.size());
        parallel_for(mats.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                const IntPoly f = char_poly(mats[i].matrix()).coeffs;
                verdicts[i] = to_string(certify_wreath(f, prime_bound).verdict);
            }
        }, 8);
        json tally = json::object();
        for (const char *v : {"certified_wreath", "certified_irreducible_only",
                              "undetermined", "contradicted"}) {
            tally[v] = 0;
        }
        json rows = json::array();
        for (std::size_t i = 0; i < mats.size(); ++i) {
            tally[verdicts[i]] = tally[verdicts[i]].get<std::uint64_t>() + 1;
            rows.push_back({{"matrix", mats[i].matrix().to_string()},
                            {"verdict", verdicts[i]}});
        }
        const auto wreath = tally["certified_wreath"].get<std::uint64_t>();
        json j{{"n", n},
               {"word_length", word_length},
               {"count", count},
               {"seed", seed},
               {"prime_bound", prime_bound},
               {"verdicts", tally},
               {"wreath_rate", count == 0 ? 0.0 : static_cast<double>(wreath) / count},
               {"samples", rows}};
        emit(j, json_out);
    });
}

cm_status cm_fup_porosity_cantor(unsigned depth, unsigned dims, double nu, double alpha0,
                                 double alpha1, int lines, double dilation,
                                 char **json_out) {
    return guarded([&] {
        require(dims == 1 || dims == 2, "dims must be 1 or 2");
        const DiscreteSet base = cantor_set(depth);
        DiscreteSet x = dims == 1 ? base : product(base, base);
        if (dilation > 0.0) {
            x = neighborhood(x, dilation);
        }
        const PorosityReport rep = porosity_check(
            x, nu, alpha0, alpha1, lines != 0 ? PorosityMode::Lines : PorosityMode::Balls);
        json j{{"depth", depth}, {"dims", dims},   {"M", x.M()},
               {"cells", x.size()}, {"nu", nu},    {"alpha0", alpha0},
               {"alpha1", alpha1}, {"mode", lines != 0 ? "lines" : "balls"},
               {"dilation", dilation}, {"porous", rep.porous}, {"scales", rep.scales}};
        if (rep.counterexample) {
            j["counterexample"] = {{"scale", rep.counterexample->scale},
                                   {"center", rep.counterexample->center},
                                   {"angle", rep.counterexample->angle}};
        } else {
            j["counterexample"] = nullptr;
        }
        emit(j, json_out);
    });
}

cm_status cm_fup_norm_cantor(unsigned depth, double *out) {
    return guarded([&] {
        need(out, "out");
        const DiscreteSet c = cantor_set(depth);
        *out = fup_norm(c, c);
    });
}

cm_status cm_scaling(int kind, unsigned d, double delta, unsigned lo, unsigned hi,
                     char **json_out) {
    return guarded([&] {
        require(kind == 0 || kind == 1, "kind must be 0 (fup) or 1 (basic)");
        const ScalingKind k = kind == 0 ? ScalingKind::Fup : ScalingKind::Basic;
        const ScalingVerdict v = scaling_experiment(k, {d, delta, lo, hi});
        emit(scaling_json(v, k, d, delta), json_out);
    });
}

} // extern "C"
