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

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "catmap/error.hpp"
#include "catmap/galois.hpp"
#include "catmap/parallel.hpp"

namespace catmap {

double census_main_term(std::uint32_t ell, unsigned n, unsigned k) {
    require(k >= 1 && k <= n, "class index out of range");
    double fact = 1.0;
    for (unsigned i = 2; i <= n - k; ++i) {
        fact *= static_cast<double>(i);
    }
    return std::pow(static_cast<double>(ell), static_cast<double>(n)) /
           (std::pow(2.0, static_cast<double>(n - k + 1)) * static_cast<double>(k) *
            fact);
}

CensusResult reciprocal_census(std::uint32_t ell, unsigned n) {
    require(ell % 2 == 1 && is_prime(ell), "ell must be an odd prime");
    require(n >= 1, "n must be positive");
    std::uint64_t total = 1;
    for (unsigned i = 0; i < n; ++i) {
        total *= ell;
        require(total <= 10'000'000ULL, "census size exceeds 10^7");
    }
    std::vector<std::string> labels(total);
    std::vector<unsigned> classes(total);
    parallel_for(total, [&](std::size_t lo, std::size_t hi) {
        std::vector<std::uint32_t> c(2 * n + 1, 0);
        for (std::size_t idx = lo; idx < hi; ++idx) {
            std::size_t rest = idx;
            c[0] = 1;
            c[2 * n] = 1;
            for (unsigned i = 1; i <= n; ++i) {
                const auto v = static_cast<std::uint32_t>(rest % ell);
                rest /= ell;
                c[i] = v;
                c[2 * n - i] = v;
            }
            const CycleType ct = factor_type(PolyModP(ell, c));
            labels[idx] = ct.label();
            classes[idx] = ct.even_cycle_class();
        }
    });
    CensusResult out;
    out.ell = ell;
    out.n = n;
    out.total = total;
    std::vector<std::uint64_t> counts(n + 1, 0);
    for (std::size_t i = 0; i < total; ++i) {
        ++out.by_type[labels[i]];
        if (classes[i] != 0) {
            ++counts[classes[i] / 2];
        }
    }
    for (unsigned k = 1; k <= n; ++k) {
        out.classes.push_back({k, counts[k], census_main_term(ell, n, k)});
    }
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::CertifiedWreath:
        return "certified_wreath";
    case Verdict::CertifiedIrreducibleOnly:
        return "certified_irreducible_only";
    case Verdict::Undetermined:
        return "undetermined";
    case Verdict::Contradicted:
        return "contradicted";
    }
    return "undetermined";
}

std::string to_string(PowerStatus s) {
    switch (s) {
    case PowerStatus::Irreducible:
        return "irreducible";
    case PowerStatus::Reducible:
        return "reducible";
    case PowerStatus::Undetermined:
        return "undetermined";
    }
    return "undetermined";
}

IntPoly poly_mul(const IntPoly &a, const IntPoly &b) {
    if (a.empty() || b.empty()) {
        return {};
    }
    IntPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            c[i + j] += a[i] * b[j];
        }
    }
    return c;
}

std::optional<IntPoly> poly_div_exact(const IntPoly &a, const IntPoly &b) {
    require(!b.empty() && b.back() == 1, "divisor must be monic");
    if (a.size() < b.size()) {
        return std::nullopt;
    }
    IntPoly r = a;
    const std::size_t db = b.size() - 1;
    IntPoly q(a.size() - db, 0);
    for (std::size_t i = r.size(); i-- > db;) {
        const BigInt coef = r[i];
        q[i - db] = coef;
        if (sgn(coef) == 0) {
            continue;
        }
        for (std::size_t j = 0; j <= db; ++j) {
            r[i - db + j] -= coef * b[j];
        }
    }
    for (std::size_t i = 0; i < db; ++i) {
        if (sgn(r[i]) != 0) {
            return std::nullopt;
        }
    }
    return q;
}

std::string poly_to_string(const IntPoly &p) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (sgn(p[i]) == 0) {
            continue;
        }
        BigInt c = p[i];
        const bool neg = sgn(c) < 0;
        if (neg) {
            c = -c;
        }
        if (first) {
            os << (neg ? "-" : "");
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        const bool unit = (c == 1);
        if (!unit || i == 0) {
            os << c.get_str();
        }
        if (i >= 1) {
            os << "x";
            if (i >= 2) {
                os << "^" << i;
            }
        }
    }
    if (first) {
        os << "0";
    }
    return os.str();
}

IntPoly parse_poly(const std::string &text) {
    IntPoly high_first;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto b = tok.find_first_not_of(" \t");
        const auto e = tok.find_last_not_of(" \t");
        require(b != std::string::npos, "empty polynomial coefficient");
        std::string t = tok.substr(b, e - b + 1);
        if (t[0] == '+') {
            t = t.substr(1);
        }
        BigInt v;
        require(v.set_str(t, 10) == 0, "bad polynomial coefficient '" + t + "'");
        high_first.push_back(v);
    }
    require(!high_first.empty(), "empty polynomial");
    return {high_first.rbegin(), high_first.rend()};
}

IntPoly Factorization::product() const {
    IntPoly p{1};
    for (const auto &[f, mult] : factors) {
        for (unsigned i = 0; i < mult; ++i) {
            p = poly_mul(p, f);
        }
    }
    return p;
}

bool Factorization::nontrivial() const {
    unsigned total = 0;
    for (const auto &[f, mult] : factors) {
        total += mult;
    }
    return total >= 2;
}

namespace {

using cld = std::complex<long double>;

std::vector<cld> numeric_roots(const IntPoly &f) {
    const auto d = static_cast<Eigen::Index>(f.size() - 1);
    using Mat = Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic>;
    Mat comp = Mat::Zero(d, d);
    for (Eigen::Index i = 1; i < d; ++i) {
        comp(i, i - 1) = 1.0L;
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        comp(i, d - 1) = -static_cast<long double>(f[static_cast<std::size_t>(i)].get_d());
    }
    Eigen::ComplexEigenSolver<Mat> es(comp, false);
    ensure(es.info() == Eigen::Success, "root finding did not converge");
    std::vector<cld> roots(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
        roots[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
    }
    return roots;
}

double binomial(unsigned n, unsigned k) {
    double r = 1.0;
    for (unsigned i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

std::optional<IntPoly> candidate_from_roots(const std::vector<cld> &roots,
                                            double lm_norm) {
    std::vector<cld> c{1.0L};
    for (const cld &r : roots) {
        std::vector<cld> next(c.size() + 1, 0.0L);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    const auto d = static_cast<unsigned>(roots.size());
    IntPoly g(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const long double re = c[i].real();
        const long double im = c[i].imag();
        const long double scale = 1.0L + std::abs(re);
        if (std::abs(im) > 1e-3L * scale) {
            return std::nullopt;
        }
        const long double rounded = std::round(re);
        if (std::abs(re - rounded) > 1e-3L * scale) {
            return std::nullopt;
        }
        if (std::abs(rounded) >
            binomial(d, static_cast<unsigned>(i)) * lm_norm + 0.5) {
            return std::nullopt;
        }
        g[i] = BigInt(std::to_string(static_cast<long long>(rounded)), 10);
    }
    return g;
}

void factor_recursive(const IntPoly &f, std::vector<IntPoly> &out) {
    const std::size_t deg = f.size() - 1;
    if (deg <= 1) {
        out.push_back(f);
        return;
    }
    require(deg <= 20, "factor search limited to degree 20");
    double norm = 0.0;
    for (const auto &c : f) {
        norm += c.get_d() * c.get_d();
    }
    norm = std::sqrt(norm);
    const std::vector<cld> roots = numeric_roots(f);
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        for (std::uint32_t mask = 0; mask < (1U << deg); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(mask)) != d) {
                continue;
            }
            std::vector<cld> subset;
            for (std::size_t i = 0; i < deg; ++i) {
                if ((mask >> i) & 1U) {
                    subset.push_back(roots[i]);
                }
            }
            const auto g = candidate_from_roots(subset, norm);
            if (!g) {
                continue;
            }
            const auto q = poly_div_exact(f, *g);
            if (!q) {
                continue;
            }
            factor_recursive(*g, out);
            factor_recursive(*q, out);
            return;
        }
    }
    out.push_back(f);
}

} // namespace

std::optional<Factorization> find_integer_factorization(const IntPoly &f) {
    require(f.size() >= 2 && f.back() == 1, "factor search needs a monic polynomial");
    std::vector<IntPoly> parts;
    factor_recursive(f, parts);
    if (parts.size() < 2) {
        return std::nullopt;
    }
    std::sort(parts.begin(), parts.end(), [](const IntPoly &a, const IntPoly &b) {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    Factorization fac;
    for (const auto &p : parts) {
        if (!fac.factors.empty() && fac.factors.back().first == p) {
            ++fac.factors.back().second;
        } else {
            fac.factors.emplace_back(p, 1U);
        }
    }
    ensure(fac.product() == f, "factorization does not multiply back");
    return fac;
}

std::vector<unsigned> required_cycle_classes(unsigned n) {
    require(n >= 1, "n must be positive");
    if (n == 1) {
        return {2};
    }
    std::vector<unsigned> req{2, 4, 2 * n - 2, 2 * n};
    std::sort(req.begin(), req.end());
    req.erase(std::unique(req.begin(), req.end()), req.end());
    return req;
}

namespace {

void validate_reciprocal(const IntPoly &f) {
    require(f.size() >= 3 && (f.size() - 1) % 2 == 0,
            "polynomial must have even degree >= 2");
    require(f.back() == 1, "polynomial must be monic");
    for (std::size_t i = 0; i < f.size(); ++i) {
        require(f[i] == f[f.size() - 1 - i], "polynomial must be reciprocal");
    }
}

} // namespace

GaloisCertificate certify_wreath(const IntPoly &f, std::uint32_t prime_bound) {
    validate_reciprocal(f);
    const auto n = static_cast<unsigned>((f.size() - 1) / 2);
    GaloisCertificate cert;
    cert.required = required_cycle_classes(n);
    auto all_found = [&] {
        return std::all_of(cert.required.begin(), cert.required.end(),
                           [&](unsigned c) { return cert.witnesses.count(c) != 0; });
    };
    for (std::uint32_t ell = 3; ell <= prime_bound && !all_found(); ell += 2) {
        if (!is_prime(ell)) {
            continue;
        }
        const CycleType ct = factor_type(PolyModP::from_integer(ell, f));
        if (!ct.squarefree) {
            cert.primes_skipped.push_back(ell);
            continue;
        }
        cert.primes_scanned.push_back(ell);
        const unsigned cls = ct.even_cycle_class();
        if (cls != 0 && cert.witnesses.count(cls) == 0) {
            cert.witnesses[cls] = Witness{ell, ct};
        }
    }
    if (all_found()) {
        cert.verdict = Verdict::CertifiedWreath;
    } else if (cert.witnesses.count(2 * n) != 0) {
        cert.verdict = Verdict::CertifiedIrreducibleOnly;
    } else if (auto fac = find_integer_factorization(f)) {
        cert.verdict = Verdict::Contradicted;
        cert.factorization = std::move(fac);
    } else {
        cert.verdict = Verdict::Undetermined;
    }
    return cert;
}

PowerScan power_scan(const SymplecticMatrix &a, unsigned m_max,
                     std::uint32_t prime_bound) {
    PowerScan scan;
    const std::size_t deg = 2 * a.n();
    for (unsigned m = 1; m <= m_max; ++m) {
        PowerVerdict pv;
        pv.m = m;
        pv.poly = char_poly(a.power(m).matrix()).coeffs;
        for (std::uint32_t ell = 3; ell <= prime_bound; ell += 2) {
            if (!is_prime(ell)) {
                continue;
            }
            const CycleType ct = factor_type(PolyModP::from_integer(ell, pv.poly));
            if (ct.squarefree && ct.degrees.size() == 1 && ct.degrees[0] == deg) {
                pv.status = PowerStatus::Irreducible;
                pv.witness_prime = ell;
                break;
            }
        }
        if (pv.status != PowerStatus::Irreducible) {
            if (auto fac = find_integer_factorization(pv.poly)) {
                pv.status = PowerStatus::Reducible;
                pv.factorization = std::move(fac);
                if (!scan.k0) {
                    scan.k0 = m;
                }
            }
        }
        scan.powers.push_back(std::move(pv));
    }
    return scan;
}

std::vector<std::uint64_t> sl2_census(std::uint32_t ell) {
    require(ell % 2 == 1 && is_prime(ell), "ell must be an odd prime");
    require(ell <= 31, "SL(2) census limited to ell <= 31");
    std::vector<std::uint64_t> counts(ell, 0);
    for (std::uint32_t a = 0; a < ell; ++a) {
        for (std::uint32_t d = 0; d < ell; ++d) {
            const std::uint32_t ad = a * d % ell;
            for (std::uint32_t b = 0; b < ell; ++b) {
                for (std::uint32_t c = 0; c < ell; ++c) {
                    if ((ad + ell * ell - b * c) % ell == 1) {
                        ++counts[(a + d) % ell];
                    }
                }
            }
        }
    }
    return counts;
}

std::vector<SymplecticMatrix> sp_generators(unsigned n) {
    require(n >= 1 && n <= 3, "sampling supports n in {1, 2, 3}");
    const std::size_t s = 2 * n;
    std::vector<SymplecticMatrix> gens;
    auto pair_block = [&](unsigned i, long a, long b, long c, long d) {
        IntMatrix m = IntMatrix::identity(s);
        m(2 * i, 2 * i) = a;
        m(2 * i, 2 * i + 1) = b;
        m(2 * i + 1, 2 * i) = c;
        m(2 * i + 1, 2 * i + 1) = d;
        return SymplecticMatrix(std::move(m));
    };
    // [[2,1],[1,1]] and [[3,2],[1,1]] are hyperbolic and generate SL(2, Z):
    // their quotient is the unipotent [[1,1],[0,1]].
    for (unsigned i = 0; i < n; ++i) {
        gens.push_back(pair_block(i, 2, 1, 1, 1));
        gens.push_back(pair_block(i, 3, 2, 1, 1));
    }
    for (unsigned i = 0; i + 1 < n; ++i) {
        // x_i += xi_{i+1}, x_{i+1} += xi_i
        IntMatrix upper = IntMatrix::identity(s);
        upper(2 * i, 2 * (i + 1) + 1) = 1;
        upper(2 * (i + 1), 2 * i + 1) = 1;
        // xi_i += x_{i+1}, xi_{i+1} += x_i
        IntMatrix lower = IntMatrix::identity(s);
        lower(2 * i + 1, 2 * (i + 1)) = 1;
        lower(2 * (i + 1) + 1, 2 * i) = 1;
        SymplecticMatrix up(upper);
        SymplecticMatrix lo(std::move(lower));
        // upper * lower in place of lower generates the same group; in
        // practice it raises the share of words with a generic Galois group.
        gens.push_back(up * lo);
        gens.push_back(std::move(up));
    }
    return gens;
}

std::vector<SymplecticMatrix> sample_sp(unsigned n, unsigned word_length,
                                        unsigned count, std::uint64_t seed) {
    const std::vector<SymplecticMatrix> base = sp_generators(n);
    std::vector<SymplecticMatrix> letters;
    for (const auto &g : base) {
        letters.push_back(g);
        letters.push_back(g.inverse());
    }
    const std::size_t k = letters.size();
    std::mt19937_64 rng(seed);
    std::vector<SymplecticMatrix> out;
    out.reserve(count);
    for (unsigned c = 0; c < count; ++c) {
        SymplecticMatrix a(IntMatrix::identity(2 * n));
        std::size_t prev = k;
        for (unsigned step = 0; step < word_length; ++step) {
            std::size_t idx = 0;
            do {
                idx = static_cast<std::size_t>(rng() % k);
            } while (prev != k && idx == (prev ^ 1U));
            a = a * letters[idx];
            prev = idx;
        }
        out.push_back(std::move(a));
    }
    return out;
}

} // namespace catmap
