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
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "catmap/error.hpp"
#include "catmap/fup.hpp"
#include "catmap/parallel.hpp"

namespace catmap {

namespace {

constexpr std::uint64_t kMaxCells = 1ULL << 26U;

std::uint64_t checked_volume(std::uint32_t M, unsigned d) {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < d; ++i) {
        v *= M;
        require(v <= kMaxCells, "grid exceeds 2^26 cells");
    }
    return v;
}

} // namespace

DiscreteSet::DiscreteSet(std::uint32_t M, unsigned d) : M_(M), d_(d) {
    require(M >= 1, "grid size must be positive");
    require(d >= 1, "dimension must be positive");
    mask_.assign(checked_volume(M, d), 0);
}

std::uint64_t DiscreteSet::flat(const std::vector<std::uint32_t> &cell) const {
    require(cell.size() == d_, "cell has the wrong dimension");
    std::uint64_t idx = 0;
    for (std::uint32_t c : cell) {
        require(c < M_, "cell outside the grid");
        idx = idx * M_ + c;
    }
    return idx;
}

bool DiscreteSet::contains(const std::vector<std::uint32_t> &cell) const {
    return mask_[flat(cell)] != 0;
}

void DiscreteSet::insert(const std::vector<std::uint32_t> &cell) {
    auto &slot = mask_[flat(cell)];
    if (slot == 0) {
        slot = 1;
        ++count_;
    }
}

std::vector<std::uint64_t> DiscreteSet::flat_cells() const {
    std::vector<std::uint64_t> out;
    out.reserve(count_);
    for (std::uint64_t i = 0; i < mask_.size(); ++i) {
        if (mask_[i] != 0) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::vector<std::uint32_t>> DiscreteSet::cells() const {
    std::vector<std::vector<std::uint32_t>> out;
    out.reserve(count_);
    for (std::uint64_t f : flat_cells()) {
        std::vector<std::uint32_t> cell(d_);
        for (unsigned k = d_; k-- > 0;) {
            cell[k] = static_cast<std::uint32_t>(f % M_);
            f /= M_;
        }
        out.push_back(std::move(cell));
    }
    return out;
}

bool DiscreteSet::subset_of(const DiscreteSet &other) const {
    require(M_ == other.M_ && d_ == other.d_, "sets live on different grids");
    for (std::size_t i = 0; i < mask_.size(); ++i) {
        if (mask_[i] != 0 && other.mask_[i] == 0) {
            return false;
        }
    }
    return true;
}

DiscreteSet DiscreteSet::full(std::uint32_t M, unsigned d) {
    DiscreteSet s(M, d);
    std::fill(s.mask_.begin(), s.mask_.end(), 1);
    s.count_ = s.mask_.size();
    return s;
}

DiscreteSet cantor_set(unsigned depth) {
    require(depth <= 16, "Cantor depth limited to 16");
    std::uint32_t M = 1;
    for (unsigned i = 0; i < depth; ++i) {
        M *= 3;
    }
    DiscreteSet s(M, 1);
    for (std::uint32_t c = 0; c < M; ++c) {
        std::uint32_t v = c;
        bool keep = true;
        for (unsigned i = 0; i < depth && keep; ++i) {
            keep = (v % 3 != 1);
            v /= 3;
        }
        if (keep) {
            s.insert({c});
        }
    }
    return s;
}

DiscreteSet product(const DiscreteSet &a, const DiscreteSet &b) {
    require(a.dims() == 1 && b.dims() == 1, "product takes one-dimensional sets");
    require(a.M() == b.M(), "sets live on different grids");
    DiscreteSet s(a.M(), 2);
    const auto ca = a.flat_cells();
    const auto cb = b.flat_cells();
    for (auto i : ca) {
        for (auto j : cb) {
            s.insert({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
        }
    }
    return s;
}

DiscreteSet neighborhood(const DiscreteSet &x, double delta) {
    require(delta >= 0.0 && std::isfinite(delta), "dilation radius must be >= 0");
    const std::uint32_t M = x.M();
    const unsigned d = x.dims();
    const auto rad = static_cast<long long>(std::ceil(delta * M - 1e-9));
    // Offsets inside the Euclidean ball of radius rad, in cell units.
    std::vector<std::vector<long long>> offsets;
    std::vector<long long> off(d, -rad);
    while (true) {
        long long r2 = 0;
        for (long long o : off) {
            r2 += o * o;
        }
        if (r2 <= rad * rad) {
            offsets.push_back(off);
        }
        unsigned k = 0;
        while (k < d && off[k] == rad) {
            off[k] = -rad;
            ++k;
        }
        if (k == d) {
            break;
        }
        ++off[k];
    }
    DiscreteSet out(M, d);
    for (const auto &cell : x.cells()) {
        for (const auto &o : offsets) {
            std::vector<std::uint32_t> target(d);
            bool inside = true;
            for (unsigned k = 0; k < d && inside; ++k) {
                const long long v = static_cast<long long>(cell[k]) + o[k];
                inside = (v >= 0 && v < static_cast<long long>(M));
                target[k] = static_cast<std::uint32_t>(v);
            }
            if (inside) {
                out.mask_[out.flat(target)] = 1;
            }
        }
    }
    out.count_ = static_cast<std::size_t>(
        std::count(out.mask_.begin(), out.mask_.end(), std::uint8_t{1}));
    return out;
}

namespace {

std::vector<double> porosity_scales(double alpha0, double alpha1) {
    std::vector<double> scales;
    for (double r = alpha0; r <= alpha1 * (1.0 + 1e-12); r *= 2.0) {
        scales.push_back(r);
    }
    return scales;
}

// Exact max over [a, b] of the distance to a sorted point set.
class GapOracle {
  public:
    explicit GapOracle(std::vector<double> pts) : p_(std::move(pts)) {
        const std::size_t g = p_.size() > 1 ? p_.size() - 1 : 0;
        if (g == 0) {
            return;
        }
        table_.emplace_back(g);
        for (std::size_t i = 0; i < g; ++i) {
            table_[0][i] = 0.5 * (p_[i + 1] - p_[i]);
        }
        for (std::size_t w = 1; (std::size_t{1} << w) <= g; ++w) {
            const std::size_t len = g - (std::size_t{1} << w) + 1;
            table_.emplace_back(len);
            for (std::size_t i = 0; i < len; ++i) {
                table_[w][i] = std::max(table_[w - 1][i],
                                        table_[w - 1][i + (std::size_t{1} << (w - 1))]);
            }
        }
    }

    [[nodiscard]] double dist(double x) const {
        const auto it = std::lower_bound(p_.begin(), p_.end(), x);
        double best = std::numeric_limits<double>::infinity();
        if (it != p_.end()) {
            best = *it - x;
        }
        if (it != p_.begin()) {
            best = std::min(best, x - *(it - 1));
        }
        return best;
    }

    [[nodiscard]] double max_on(double a, double b) const {
        double best = std::max(dist(a), dist(b));
        if (table_.empty()) {
            return best;
        }
        // Gap i has midpoint (p_i + p_{i+1}) / 2; those inside [a, b] form a range.
        const std::size_t g = p_.size() - 1;
        auto first_with = [&](auto pred) {
            std::size_t lo = 0;
            std::size_t hi = g;
            while (lo < hi) {
                const std::size_t m = lo + (hi - lo) / 2;
                if (pred(0.5 * (p_[m] + p_[m + 1]))) {
                    hi = m;
                } else {
                    lo = m + 1;
                }
            }
            return lo;
        };
        const std::size_t first = first_with([&](double mid) { return mid >= a; });
        const std::size_t last = first_with([&](double mid) { return mid > b; });
        if (first < last && first < g) {
            const std::size_t len = last - first;
            const auto w = static_cast<std::size_t>(std::bit_width(len) - 1);
            best = std::max(best, std::max(table_[w][first],
                                           table_[w][last - (std::size_t{1} << w)]));
        }
        return best;
    }

  private:
    std::vector<double> p_;
    std::vector<std::vector<double>> table_;
};

PorosityReport porosity_1d(const DiscreteSet &x, double nu, double alpha0,
                           double alpha1, PorosityMode mode) {
    PorosityReport rep;
    rep.scales = porosity_scales(alpha0, alpha1);
    const double M = x.M();
    std::vector<double> pts;
    for (auto c : x.flat_cells()) {
        pts.push_back(static_cast<double>(c) + 0.5);
    }
    const GapOracle oracle(std::move(pts));
    for (double r : rep.scales) {
        const double rc = r * M;
        const double half = (mode == PorosityMode::Balls) ? rc : 0.5 * rc;
        for (std::uint64_t k = 0; k <= 2ULL * x.M(); ++k) {
            const double y = 0.5 * static_cast<double>(k);
            if (oracle.max_on(y - half, y + half) < nu * rc * (1.0 - 1e-12)) {
                rep.porous = false;
                rep.counterexample = PorosityCounterexample{r, {y / M}, 0.0};
                return rep;
            }
        }
    }
    return rep;
}

// Squared Euclidean distance transform along one line (lower envelope of
// parabolas).
void edt_line(const double *f, double *out, std::size_t n, std::size_t stride,
              std::vector<std::size_t> &v, std::vector<double> &z) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    v.assign(n, 0);
    z.assign(n + 1, 0.0);
    std::size_t k = 0;
    std::size_t start = n;
    for (std::size_t q = 0; q < n; ++q) {
        if (f[q * stride] < inf) {
            start = q;
            break;
        }
    }
    if (start == n) {
        for (std::size_t q = 0; q < n; ++q) {
            out[q * stride] = inf;
        }
        return;
    }
    v[0] = start;
    z[0] = -inf;
    z[1] = inf;
    for (std::size_t q = start + 1; q < n; ++q) {
        const double fq = f[q * stride];
        if (fq == inf) {
            continue;
        }
        const auto qd = static_cast<double>(q);
        double s = 0.0;
        while (true) {
            const auto vk = static_cast<double>(v[k]);
            s = ((fq + qd * qd) - (f[v[k] * stride] + vk * vk)) / (2.0 * (qd - vk));
            if (s <= z[k] && k > 0) {
                --k;
                continue;
            }
            break;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = inf;
    }
    std::size_t j = 0;
    for (std::size_t q = 0; q < n; ++q) {
        const auto qd = static_cast<double>(q);
        while (z[j + 1] < qd) {
            ++j;
        }
        const auto vj = static_cast<double>(v[j]);
        out[q * stride] = (qd - vj) * (qd - vj) + f[v[j] * stride];
    }
}

PorosityReport porosity_2d(const DiscreteSet &x, double nu, double alpha0,
                           double alpha1, PorosityMode mode) {
    PorosityReport rep;
    rep.scales = porosity_scales(alpha0, alpha1);
    const std::uint32_t M = x.M();
    const auto pad = static_cast<std::size_t>(std::ceil(alpha1 * M)) + 2;
    const std::size_t S = M + 2 * pad;
    require(static_cast<std::uint64_t>(S) * S <= kMaxCells,
            "padded porosity grid exceeds 2^26 cells");
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> f(S * S, inf);
    for (const auto &c : x.cells()) {
        f[(c[0] + pad) * S + (c[1] + pad)] = 0.0;
    }
    std::vector<double> tmp(S * S);
    std::vector<std::size_t> v;
    std::vector<double> z;
    for (std::size_t j = 0; j < S; ++j) {
        edt_line(f.data() + j, tmp.data() + j, S, S, v, z);
    }
    for (std::size_t i = 0; i < S; ++i) {
        edt_line(tmp.data() + i * S, f.data() + i * S, S, 1, v, z);
    }
    for (auto &val : f) {
        val = std::sqrt(val);
    }
    auto dist_at = [&](long long i, long long j) {
        i = std::clamp<long long>(i, 0, static_cast<long long>(S) - 1);
        j = std::clamp<long long>(j, 0, static_cast<long long>(S) - 1);
        return f[static_cast<std::size_t>(i) * S + static_cast<std::size_t>(j)];
    };
    // Any point lies within sqrt(2)/2 cells of a sampled cell center and the
    // distance function is 1-Lipschitz, so these slacks keep rejection exact.
    const double cell_slack = std::numbers::sqrt2 / 2.0;
    for (double r : rep.scales) {
        const double rc = r * M;
        const auto stride = std::max<long long>(1, static_cast<long long>(rc / 2.0));
        const double need = nu * rc * (1.0 - 1e-12);
        for (long long ci = 0; ci < static_cast<long long>(M); ci += stride) {
            for (long long cj = 0; cj < static_cast<long long>(M); cj += stride) {
                const long long pi = ci + static_cast<long long>(pad);
                const long long pj = cj + static_cast<long long>(pad);
                if (mode == PorosityMode::Balls) {
                    const double reach = rc + cell_slack;
                    const auto span = static_cast<long long>(std::ceil(reach));
                    double best = 0.0;
                    for (long long di = -span; di <= span && best < need; ++di) {
                        for (long long dj = -span; dj <= span; ++dj) {
                            if (static_cast<double>(di * di + dj * dj) > reach * reach) {
                                continue;
                            }
                            best = std::max(best, dist_at(pi + di, pj + dj) + cell_slack);
                        }
                    }
                    if (best < need) {
                        rep.porous = false;
                        rep.counterexample = PorosityCounterexample{
                            r, {(ci + 0.5) / M, (cj + 0.5) / M}, 0.0};
                        return rep;
                    }
                } else {
                    const auto steps = static_cast<long long>(std::ceil(rc)) + 1;
                    const double step = rc / (2.0 * static_cast<double>(steps));
                    for (int dir = 0; dir < 16; ++dir) {
                        const double theta = std::numbers::pi * dir / 16.0;
                        const double ux = std::cos(theta);
                        const double uy = std::sin(theta);
                        double best = 0.0;
                        for (long long s = -steps; s <= steps && best < need; ++s) {
                            const double t = step * static_cast<double>(s);
                            const auto qi = static_cast<long long>(
                                std::llround(static_cast<double>(pi) + t * ux));
                            const auto qj = static_cast<long long>(
                                std::llround(static_cast<double>(pj) + t * uy));
                            best = std::max(best, dist_at(qi, qj) + cell_slack +
                                                      0.5 * step);
                        }
                        if (best < need) {
                            rep.porous = false;
                            rep.counterexample = PorosityCounterexample{
                                r, {(ci + 0.5) / M, (cj + 0.5) / M}, theta};
                            return rep;
                        }
                    }
                }
            }
        }
    }
    return rep;
}

} // namespace

PorosityReport porosity_check(const DiscreteSet &x, double nu, double alpha0,
                              double alpha1, PorosityMode mode) {
    require(alpha0 > 0.0 && alpha0 <= alpha1 && alpha1 <= 1.0,
            "scales must satisfy 0 < alpha0 <= alpha1 <= 1");
    require(nu > 0.0 && nu < 1.0, "nu must lie in (0, 1)");
    if (x.empty()) {
        PorosityReport rep;
        rep.scales = porosity_scales(alpha0, alpha1);
        return rep;
    }
    if (x.dims() == 1) {
        return porosity_1d(x, nu, alpha0, alpha1, mode);
    }
    if (x.dims() == 2) {
        return porosity_2d(x, nu, alpha0, alpha1, mode);
    }
    throw UnsupportedInput("porosity checks support d in {1, 2}");
}

namespace {

std::vector<std::complex<double>> unit_table(std::uint32_t M, int sign) {
    std::vector<std::complex<double>> t(M);
    for (std::uint32_t k = 0; k < M; ++k) {
        const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / M;
        t[k] = {std::cos(ang), std::sin(ang)};
    }
    return t;
}

double top_singular_value(const Eigen::MatrixXcd &a) {
    if (a.size() == 0) {
        return 0.0;
    }
    if (std::min(a.rows(), a.cols()) <= 16) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
        return svd.singularValues()(0);
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    return svd.singularValues()(0);
}

} // namespace

double fup_norm(const DiscreteSet &xm, const DiscreteSet &xp) {
    require(xm.M() == xp.M() && xm.dims() == xp.dims(),
            "fup_norm needs sets on the same grid");
    if (xm.empty() || xp.empty()) {
        return 0.0;
    }
    require(static_cast<std::uint64_t>(xm.size()) * xp.size() <= (1ULL << 24U),
            "DFT submatrix exceeds 2^24 entries");
    const std::uint32_t M = xm.M();
    const auto rows = xm.cells();
    const auto cols = xp.cells();
    const auto units = unit_table(M, -1);
    const double scale = std::pow(static_cast<double>(M), -0.5 * xm.dims());
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            std::uint64_t phase = 0;
            for (unsigned k = 0; k < xm.dims(); ++k) {
                phase = (phase + static_cast<std::uint64_t>(rows[r][k]) * cols[c][k]) % M;
            }
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                scale * units[phase];
        }
    }
    return top_singular_value(a);
}

double dft_unitarity_defect(std::uint32_t M) {
    require(M >= 1, "grid size must be positive");
    const auto units = unit_table(M, 1);
    // (F^H F)_{ij} depends only on j - i mod M.
    std::vector<double> err(M, 0.0);
    parallel_for(M, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t diff = lo; diff < hi; ++diff) {
            std::complex<double> s = 0.0;
            for (std::uint64_t k = 0; k < M; ++k) {
                s += units[k * diff % M];
            }
            s /= static_cast<double>(M);
            err[diff] = std::abs(s - (diff == 0 ? 1.0 : 0.0));
        }
    }, 16);
    return *std::max_element(err.begin(), err.end());
}

double bump(double t) {
    if (!(std::abs(t) < 1.0)) {
        return 0.0;
    }
    return std::exp(-1.0 / (1.0 - t * t));
}

void fit_slope(ScalingRun &run) {
    require(run.hs.size() == run.norms.size(), "mismatched scaling data");
    require(run.hs.size() >= 4, "slope regression needs at least 4 sizes");
    const auto n = static_cast<double>(run.hs.size());
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < run.hs.size(); ++i) {
        require(run.norms[i] > 0.0, "norms must be positive for a log fit");
        const double lx = std::log(run.hs[i]);
        const double ly = std::log(run.norms[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    require(denom > 0.0, "slope regression needs distinct sizes");
    run.fitted_slope = (n * sxy - sx * sy) / denom;
    run.intercept = (sy - run.fitted_slope * sx) / n;
}

namespace {

double basic_norm(std::uint64_t M, double delta) {
    const double h = 1.0 / static_cast<double>(M);
    const double width = std::pow(h, delta);
    const auto half = static_cast<long long>(M / 2);
    std::vector<long long> idx;
    std::vector<double> weight;
    for (long long j = -half; j < static_cast<long long>(M) - half; ++j) {
        const double w = bump((static_cast<double>(j) * h) / width);
        if (w > 0.0) {
            idx.push_back(j);
            weight.push_back(w);
        }
    }
    const auto units = unit_table(static_cast<std::uint32_t>(M), 1);
    const auto m = static_cast<long long>(M);
    const double scale = 1.0 / std::sqrt(static_cast<double>(M));
    const auto k = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd a(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
        for (Eigen::Index c = 0; c < k; ++c) {
            long long phase = (idx[static_cast<std::size_t>(r)] *
                               idx[static_cast<std::size_t>(c)]) % m;
            if (phase < 0) {
                phase += m;
            }
            a(r, c) = weight[static_cast<std::size_t>(r)] * scale *
                      units[static_cast<std::size_t>(phase)] *
                      weight[static_cast<std::size_t>(c)];
        }
    }
    return top_singular_value(a);
}

} // namespace

ScalingRun basic_uncertainty_run(unsigned d, double delta, unsigned p_min,
                                 unsigned p_max) {
    require(d >= 1 && d <= 3, "dimension must be 1, 2 or 3");
    require(delta >= 0.5 && delta < 1.0, "delta must lie in [1/2, 1)");
    require(p_min <= p_max && p_max <= 16, "grid exponents out of range");
    ScalingRun run;
    run.theory_slope = 0.5 * d * (2.0 * delta - 1.0);
    for (unsigned p = p_min; p <= p_max; ++p) {
        run.sizes.push_back(1ULL << p);
        run.hs.push_back(1.0 / static_cast<double>(1ULL << p));
    }
    run.norms.assign(run.sizes.size(), 0.0);
    parallel_for(run.sizes.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            // The d-fold tensor product has the d-th power of the 1-D norm.
            run.norms[i] = std::pow(basic_norm(run.sizes[i], delta), d);
        }
    }, 1);
    fit_slope(run);
    return run;
}

ScalingRun fup_cantor_run(unsigned depth_min, unsigned depth_max) {
    require(depth_min >= 1 && depth_min <= depth_max && depth_max <= 12,
            "Cantor depths out of range");
    ScalingRun run;
    for (unsigned r = depth_min; r <= depth_max; ++r) {
        const DiscreteSet c = cantor_set(r);
        run.sizes.push_back(c.M());
        run.hs.push_back(1.0 / static_cast<double>(c.M()));
    }
    run.norms.assign(run.sizes.size(), 0.0);
    parallel_for(run.sizes.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const DiscreteSet c = cantor_set(depth_min + static_cast<unsigned>(i));
            run.norms[i] = fup_norm(c, c);
        }
    }, 1);
    fit_slope(run);
    return run;
}

ScalingVerdict scaling_experiment(ScalingKind kind, const ScalingParams &params) {
    ScalingVerdict out;
    if (kind == ScalingKind::Basic) {
        const unsigned lo = params.lo != 0 ? params.lo : 8;
        const unsigned hi = params.hi != 0 ? params.hi : 14;
        out.run = basic_uncertainty_run(params.d, params.delta, lo, hi);
        out.passed = std::abs(out.run.fitted_slope - *out.run.theory_slope) <= 0.1;
        out.criterion = "|fitted_slope - theory_slope| <= 0.1";
        return out;
    }
    const unsigned lo = params.lo != 0 ? params.lo : 4;
    const unsigned hi = params.hi != 0 ? params.hi : 9;
    out.run = fup_cantor_run(lo, hi);
    bool decreasing = true;
    for (std::size_t i = 1; i < out.run.norms.size(); ++i) {
        decreasing = decreasing && out.run.norms[i] < out.run.norms[i - 1];
    }
    out.passed = decreasing && out.run.fitted_slope >= 0.05;
    out.criterion = "strictly decreasing norms and fitted_slope >= 0.05";
    return out;
}

} // namespace catmap
