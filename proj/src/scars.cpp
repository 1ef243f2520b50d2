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

#include "catmap/scars.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "catmap/error.hpp"
#include "catmap/parallel.hpp"

namespace catmap {

namespace {

struct Sl2 {
    double a, b, c, d;
};

Sl2 entries(const SymplecticMatrix &m) {
    require(m.n() == 1, "expected a 2x2 matrix");
    const IntMatrix &x = m.matrix();
    return {x(0, 0).get_d(), x(0, 1).get_d(), x(1, 0).get_d(), x(1, 1).get_d()};
}

void require_symmetric_positive(const SymplecticMatrix &m) {
    require(m.n() == 1, "expected a 2x2 matrix");
    const IntMatrix &x = m.matrix();
    if (x(0, 1) != x(1, 0)) {
        throw UnsupportedInput("overlap formula needs a symmetric matrix");
    }
    if (sgn(x(0, 0)) <= 0 || sgn(x(0, 1)) <= 0 || sgn(x(1, 1)) <= 0) {
        throw UnsupportedInput("overlap formula needs positive entries");
    }
    require(x.trace() > 2, "overlap formula needs Tr(A) > 2");
}

/// Trapezoid rule on [lo, hi] starting from n intervals, halving the step
/// until two successive levels agree.
cplx adaptive_trapezoid(const std::function<cplx(double)> &f, double lo,
                        double hi, std::size_t n, double tol, unsigned max_levels) {
    double step = (hi - lo) / static_cast<double>(n);
    cplx sum = 0.5 * (f(lo) + f(hi));
    for (std::size_t i = 1; i < n; ++i) {
        sum += f(lo + step * static_cast<double>(i));
    }
    cplx prev = sum * step;
    for (unsigned level = 1; level <= max_levels; ++level) {
        for (std::size_t i = 0; i < n; ++i) {
            sum += f(lo + step * (static_cast<double>(i) + 0.5));
        }
        n *= 2;
        step *= 0.5;
        const cplx cur = sum * step;
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) {
            return cur;
        }
        prev = cur;
    }
    throw InvariantError("overlap quadrature did not converge");
}

/// Intervals needed for at least four samples per period of the fastest
/// oscillation on an interval of the given length.
std::size_t resolved_intervals(double length, double max_frequency) {
    const double want = length * max_frequency / (0.5 * std::numbers::pi);
    std::size_t n = 64;
    while (static_cast<double>(n) < want) {
        n *= 2;
    }
    return n;
}

} // namespace

cplx overlap_closed_form(const SymplecticMatrix &a, Vec2 omega, double h) {
    require_symmetric_positive(a);
    require(h > 0.0, "h must be positive");
    const Sl2 m = entries(a);
    const double tr = m.a + m.d;
    const double y = omega[0];
    const double eta = omega[1];
    const double q_inv = m.d * y * y - 2.0 * m.b * y * eta + m.a * eta * eta;
    const double q_rot = (m.a - m.d) * y * eta - m.b * y * y + m.c * eta * eta;
    const double scale = 2.0 * h * tr;
    return std::sqrt(2.0 / tr) * std::exp(-q_inv / scale) *
           std::polar(1.0, q_rot / scale);
}

cplx overlap_quadrature(const SymplecticMatrix &a, Vec2 omega, double h,
                        QuadratureOptions opts) {
    require(a.n() == 1, "expected a 2x2 matrix");
    require(h > 0.0, "h must be positive");
    const Sl2 m = entries(a);
    require(m.b > 0.0, "kernel needs b > 0");
    // Rescale x = sqrt(h) X and y = sqrt(h) s so both Gaussians have unit width.
    const double sh = std::sqrt(h);
    const double Y = omega[0] / sh;
    const double E = omega[1] / sh;
    const double cut = 9.0;
    const cplx quad_coef(-0.5, m.a / (2.0 * m.b));
    const double x_max = std::abs(Y) + cut;

    // (M_A G)(X) up to constants: integral over s of
    // exp(quad_coef s^2 - i X s / b). The chirp weights do not depend on X, so
    // they are tabulated once; the linear phase runs as a recurrence that is
    // reseeded every 64 steps.
    std::size_t n_in = resolved_intervals(2.0 * cut, (std::abs(m.a) * cut + x_max) / m.b + 1.0);
    for (unsigned attempt = 0; attempt < 4; ++attempt, n_in *= 2) {
        const double step = 2.0 * cut / static_cast<double>(n_in);
        std::vector<cplx> w(n_in + 1);
        for (std::size_t k = 0; k <= n_in; ++k) {
            const double sk = -cut + step * static_cast<double>(k);
            w[k] = std::exp(quad_coef * sk * sk) * ((k == 0 || k == n_in) ? 0.5 : 1.0);
        }
        bool inner_resolved = true;
        auto inner_kernel = [&](double X) {
            const cplx rot = std::polar(1.0, -X * step / m.b);
            cplx phase;
            cplx fine = 0.0;
            cplx coarse = 0.0;
            for (std::size_t k = 0; k <= n_in; ++k) {
                if (k % 64 == 0) {
                    phase = std::polar(1.0, -X * (-cut + step * static_cast<double>(k)) / m.b);
                }
                const cplx term = w[k] * phase;
                fine += term;
                if (k % 2 == 0) {
                    coarse += term;
                }
                phase *= rot;
            }
            fine *= step;
            coarse *= 2.0 * step;
            if (std::abs(fine - coarse) > opts.tolerance * std::max(1.0, std::abs(fine))) {
                inner_resolved = false;
            }
            return fine;
        };
        auto outer = [&](double X) {
            const cplx shifted =
                std::exp(cplx(-0.5 * (X - Y) * (X - Y), E * X - 0.5 * Y * E));
            const cplx ma = std::polar(1.0, m.d * X * X / (2.0 * m.b)) * inner_kernel(X);
            return shifted * std::conj(ma);
        };
        const double f_out = std::abs(E) + (std::abs(m.a) + std::abs(m.d)) / m.b * x_max + 1.0;
        const cplx integral =
            adaptive_trapezoid(outer, Y - cut, Y + cut, resolved_intervals(2.0 * cut, f_out),
                               opts.tolerance, opts.max_levels);
        if (!inner_resolved) {
            continue;
        }
        const cplx pref = std::polar(1.0, std::numbers::pi / 4.0) /
                          std::sqrt(2.0 * std::numbers::pi * m.b) /
                          std::sqrt(std::numbers::pi);
        return pref * integral;
    }
    throw InvariantError("overlap quadrature did not resolve the kernel integral");
}

std::vector<OverlapSample> overlap_samples(const SymplecticMatrix &a, unsigned count,
                                           std::uint64_t seed,
                                           const std::vector<std::uint64_t> &Ns) {
    require(!Ns.empty(), "overlap samples need at least one N");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<OverlapSample> out(count);
    for (auto &s : out) {
        const double r = 2.0 * std::sqrt(unit(rng));
        const double ang = 2.0 * std::numbers::pi * unit(rng);
        s.omega = {r * std::cos(ang), r * std::sin(ang)};
        s.N = Ns[static_cast<std::size_t>(rng() % Ns.size())];
        s.h = 1.0 / (2.0 * std::numbers::pi * static_cast<double>(s.N));
    }
    parallel_for(out.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            auto &s = out[i];
            s.closed = overlap_closed_form(a, s.omega, s.h);
            s.quadrature = overlap_quadrature(a, s.omega, s.h);
            s.error = std::abs(s.closed - s.quadrature);
        }
    }, 1);
    return out;
}

double gaussian_autocorrelation(double lambda, long long t) {
    require(lambda > 1.0, "lambda must exceed 1");
    const double lt = std::pow(lambda, static_cast<double>(t));
    return std::sqrt(2.0 / (lt + 1.0 / lt));
}

double s1(double lambda) {
    require(lambda > 1.0, "lambda must exceed 1");
    double sum = 1.0;
    for (long long t = 1;; ++t) {
        const double lt = std::pow(lambda, static_cast<double>(t));
        const double term = 2.0 * 2.0 / (lt + 1.0 / lt);
        sum += term;
        if (term < 1e-16 * sum) {
            break;
        }
    }
    return sum;
}

LatticeSum lattice_overlap_sum(const SymplecticMatrix &a, long long q, Vec2 c,
                               double h) {
    require_symmetric_positive(a);
    require(h > 0.0, "h must be positive");
    const Sl2 m = entries(a.power(q));
    const double tr = m.a + m.d;
    const double pref = std::sqrt(2.0 / tr);
    const double scale = 2.0 * h * tr;
    // Terms pref * exp(-F(w)) with F(w) = <A^{-q} w, w> / (2 h Tr).
    const double e_max = std::log(pref * 1e16);
    LatticeSum out;
    if (e_max <= 0.0) {
        return out;
    }
    const double w1_max = std::sqrt(e_max * scale * m.a);
    const auto l1_lo = static_cast<long long>(std::ceil(-w1_max - c[0]));
    const auto l1_hi = static_cast<long long>(std::floor(w1_max - c[0]));
    for (long long l1 = l1_lo; l1 <= l1_hi; ++l1) {
        const double w1 = static_cast<double>(l1) + c[0];
        const double disc = -w1 * w1 + m.a * scale * e_max;
        if (disc < 0.0) {
            continue;
        }
        const double root = std::sqrt(disc);
        const auto l2_lo =
            static_cast<long long>(std::ceil((m.b * w1 - root) / m.a - c[1]));
        const auto l2_hi =
            static_cast<long long>(std::floor((m.b * w1 + root) / m.a - c[1]));
        for (long long l2 = l2_lo; l2 <= l2_hi; ++l2) {
            const double w2 = static_cast<double>(l2) + c[1];
            const double f = (m.d * w1 * w1 - 2.0 * m.b * w1 * w2 + m.a * w2 * w2) / scale;
            const double term = pref * std::exp(-f);
            if (term < 1e-16) {
                continue;
            }
            out.total += term;
            ++out.terms;
            if (l1 == 0 && l2 == 0) {
                out.origin_term = term;
            }
        }
    }
    return out;
}

ScarConfig make_scar_config(const SymplecticMatrix &b, unsigned k) {
    require_symmetric_positive(b);
    const AdmissibleN adm = admissible_N(b, k);
    require(adm.admissible, "k is not admissible for this matrix");
    require(adm.even, "N_k must be even");
    const std::uint64_t N = to_u64(adm.N, "N_k");
    require(N <= (std::uint64_t{1} << 26U), "N_k exceeds the memory budget");
    const std::uint64_t P = quantum_period(b, N);
    ensure(P == 2ULL * k, "quantum period differs from 2k");
    const Propagator m = metaplectic_sl2(StateSpace(1, N), b);
    const PeriodPhase pp = period_phase(m, P);
    return ScarConfig{b, k, N, P, pp.phase, pp.defect, b.expansion_rate()};
}

ScarEnsemble::ScarEnsemble(ScarConfig config, Propagator m,
                           Eigen::MatrixXcd states)
    : config_(std::move(config)), m_(std::move(m)), states_(std::move(states)) {
    ensure(states_.rows() == static_cast<Eigen::Index>(config_.N) &&
               states_.cols() == static_cast<Eigen::Index>(3 * config_.P / 2),
           "scar state block has wrong shape");
}

Eigen::VectorXcd ScarEnsemble::state(long long t) const {
    const long long half = static_cast<long long>(P() / 2);
    require(t >= -half && t < static_cast<long long>(P()), "t out of range");
    return states_.col(static_cast<Eigen::Index>(t + half));
}

namespace {

Eigen::MatrixXcd translate_block(const StateSpace &space, Lattice2 j,
                                 const Eigen::Ref<const Eigen::MatrixXcd> &block) {
    const TranslationOperator u(space, LatticeVector{j[0], j[1]});
    Eigen::MatrixXcd out(block.rows(), block.cols());
    const auto n = static_cast<std::size_t>(block.rows());
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
        u.apply(std::span<const cplx>(block.col(c).data(), n),
                std::span<cplx>(out.col(c).data(), n));
    }
    return out;
}

// G(s, t) = <U_j x_t, x_s>.
Eigen::MatrixXcd gram(const StateSpace &space, Lattice2 j,
                      const Eigen::Ref<const Eigen::MatrixXcd> &block) {
    return block.adjoint() * translate_block(space, j, block);
}

cplx combine(const Eigen::MatrixXcd &gv, const Eigen::MatrixXcd &gw, double p) {
    return gv.cwiseProduct(gw).sum() / p;
}

} // namespace

double ScarEnsemble::norm2() const {
    return matrix_element(*this, {0, 0}, {0, 0}).real();
}

double ScarEnsemble::partial_norm2(long long beta, std::uint64_t alpha) const {
    const long long half = static_cast<long long>(P() / 2);
    require(beta >= -half && beta + static_cast<long long>(alpha) <= half,
            "interval outside [-P/2, P/2)");
    const auto start = static_cast<Eigen::Index>(beta + half);
    const auto len = static_cast<Eigen::Index>(alpha);
    const Eigen::MatrixXcd v = v_block().middleCols(start, len);
    const Eigen::MatrixXcd w = w_block().middleCols(start, len);
    const Eigen::MatrixXcd gv = v.adjoint() * v;
    const Eigen::MatrixXcd gw = w.adjoint() * w;
    return combine(gv, gw, static_cast<double>(P())).real();
}

void ScarEnsemble::density_row(std::uint64_t row, bool centered,
                               std::span<double> out) const {
    const std::uint64_t n = N();
    require(row < n && out.size() == n, "density row out of range");
    const std::uint64_t s = centered ? n / 2 : 0;
    const std::uint64_t j1 = (row + n - s) % n;
    const Eigen::VectorXcd coeff =
        v_block().row(static_cast<Eigen::Index>(j1)).transpose();
    const Eigen::VectorXcd r = w_block() * coeff;
    const double inv_p = 1.0 / static_cast<double>(P());
    for (std::uint64_t c = 0; c < n; ++c) {
        out[c] = std::norm(r(static_cast<Eigen::Index>((c + n - s) % n))) * inv_p;
    }
}

ScarEnsemble build_scar(const ScarConfig &config) {
    const std::uint64_t N = config.N;
    const std::uint64_t P = config.P;
    require(P % 2 == 0 && P >= 2, "period must be even");
    const StateSpace space(1, N);
    Propagator m = metaplectic_sl2(space, config.B);
    const QuantumState g = project_gaussian(space);
    const long long half = static_cast<long long>(P / 2);
    Eigen::MatrixXcd states(static_cast<Eigen::Index>(N),
                            static_cast<Eigen::Index>(3 * P / 2));
    auto col = [&](long long t) {
        return std::span<cplx>(states.col(static_cast<Eigen::Index>(t + half)).data(),
                               N);
    };
    std::copy(g.coeffs().begin(), g.coeffs().end(), col(0).begin());
    for (long long t = 1; t < static_cast<long long>(P); ++t) {
        m.apply(col(t - 1), col(t));
    }
    for (long long t = -1; t >= -half; --t) {
        m.apply_inverse(col(t + 1), col(t));
    }
    for (long long t = -half; t < static_cast<long long>(P); ++t) {
        const cplx ph = std::polar(1.0, -config.phase * static_cast<double>(t) /
                                            static_cast<double>(P));
        for (auto &z : col(t)) {
            z *= ph;
        }
    }
    return {config, std::move(m), std::move(states)};
}

QuantumState materialize(const ScarEnsemble &scar) {
    const std::uint64_t N = scar.N();
    require(N * N <= (std::uint64_t{1} << 26U), "scar too large to materialize");
    const Eigen::MatrixXcd u =
        scar.v_block() * scar.w_block().transpose() /
        std::sqrt(static_cast<double>(scar.P()));
    std::vector<cplx> c(N * N);
    for (std::uint64_t j1 = 0; j1 < N; ++j1) {
        for (std::uint64_t j2 = 0; j2 < N; ++j2) {
            c[j1 * N + j2] =
                u(static_cast<Eigen::Index>(j1), static_cast<Eigen::Index>(j2));
        }
    }
    return {StateSpace(2, N), std::move(c)};
}

cplx matrix_element(const ScarEnsemble &scar, Lattice2 j, Lattice2 k) {
    const StateSpace space(1, scar.N());
    const Eigen::MatrixXcd gv = gram(space, j, scar.v_block());
    const Eigen::MatrixXcd gw = gram(space, k, scar.w_block());
    return combine(gv, gw, static_cast<double>(scar.P()));
}

double measure_target(Lattice2 j, Lattice2 k) {
    const bool jz = j[0] == 0 && j[1] == 0;
    const bool kz = k[0] == 0 && k[1] == 0;
    if (jz && kz) {
        return 1.0;
    }
    if (jz || kz) {
        return 0.5;
    }
    return 0.0;
}

std::vector<ScanRow> semiclassical_scan(const ScarEnsemble &scar, int window) {
    require(window >= 0, "window must be nonnegative");
    const StateSpace space(1, scar.N());
    std::vector<Lattice2> lattice;
    for (long long a = -window; a <= window; ++a) {
        for (long long b = -window; b <= window; ++b) {
            lattice.push_back({a, b});
        }
    }
    std::vector<Eigen::MatrixXcd> gv(lattice.size());
    std::vector<Eigen::MatrixXcd> gw(lattice.size());
    parallel_for(lattice.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            gv[i] = gram(space, lattice[i], scar.v_block());
            gw[i] = gram(space, lattice[i], scar.w_block());
        }
    }, 1);
    const double p = static_cast<double>(scar.P());
    const std::size_t zero = lattice.size() / 2;
    const double norm = combine(gv[zero], gw[zero], p).real();
    std::vector<ScanRow> rows;
    rows.reserve(lattice.size() * lattice.size());
    for (std::size_t a = 0; a < lattice.size(); ++a) {
        for (std::size_t b = 0; b < lattice.size(); ++b) {
            ScanRow r;
            r.j = lattice[a];
            r.k = lattice[b];
            r.ratio = combine(gv[a], gw[b], p) / norm;
            r.target = measure_target(r.j, r.k);
            r.error = std::abs(r.ratio - r.target);
            rows.push_back(r);
        }
    }
    return rows;
}

double eigen_residual(const Propagator &p, const QuantumState &u, cplx z) {
    const QuantumState pu = p.apply(u);
    std::vector<cplx> r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        r[i] = pu[i] - z * u[i];
    }
    return std::sqrt(norm2(r)) / u.norm();
}

cplx rayleigh_quotient(const Propagator &p, const QuantumState &u) {
    return inner(p.apply(u), u) / u.norm2();
}

BandMass axis_band_mass(const ScarEnsemble &scar) {
    const std::uint64_t n = scar.N();
    const double width = static_cast<double>(n) / 16.0;
    auto in_band = [&](std::uint64_t j) {
        return static_cast<double>(std::min(j, n - j)) <= width;
    };
    std::vector<double> row(n);
    double band = 0.0;
    double total = 0.0;
    std::uint64_t band_cells = 0;
    for (std::uint64_t j1 = 0; j1 < n; ++j1) {
        scar.density_row(j1, false, row);
        const bool row_band = in_band(j1);
        for (std::uint64_t j2 = 0; j2 < n; ++j2) {
            total += row[j2];
            if (row_band || in_band(j2)) {
                band += row[j2];
                ++band_cells;
            }
        }
    }
    BandMass out;
    out.mass_fraction = band / total;
    out.area_fraction =
        static_cast<double>(band_cells) / static_cast<double>(n * n);
    return out;
}

cplx scar_eigenvalue(const ScarConfig &config) {
    return std::polar(1.0, 2.0 * config.phase / static_cast<double>(config.P));
}

Propagator product_propagator(const ScarEnsemble &scar) {
    return tensor(scar.propagator(), scar.propagator());
}

Propagator tight_propagator(const ScarEnsemble &scar) {
    return compose(product_propagator(scar),
                   rotation_propagator(StateSpace(2, scar.N())));
}

} // namespace catmap
