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

#include "catmap/hilbert.hpp"

#include <cmath>
#include <numbers>

#include "catmap/error.hpp"
#include "catmap/parallel.hpp"

namespace catmap {

StateSpace::StateSpace(unsigned n, std::uint64_t N, std::vector<Rational> theta)
    : n_(n), N_(N), dim_(1), theta_(std::move(theta)) {
    require(n >= 1, "need at least one degree of freedom");
    require(N >= 1, "N must be positive");
    if (theta_.empty()) {
        theta_.assign(2 * n, Rational(0));
    }
    require(theta_.size() == 2 * n, "theta has wrong length");
    for (unsigned i = 0; i < n; ++i) {
        require(dim_ <= (std::size_t{1} << 40U) / N, "state space too large");
        dim_ *= N;
    }
}

double StateSpace::h() const {
    return 1.0 / (2.0 * std::numbers::pi * static_cast<double>(N_));
}

bool StateSpace::theta_is_zero() const {
    for (const auto &t : theta_) {
        if (t != 0) {
            return false;
        }
    }
    return true;
}

void StateSpace::require_zero_theta() const {
    if (!theta_is_zero()) {
        throw UnsupportedInput("only theta = 0 is supported");
    }
}

bool operator==(const StateSpace &a, const StateSpace &b) {
    return a.n_ == b.n_ && a.N_ == b.N_ && a.theta_ == b.theta_;
}

QuantumState::QuantumState(StateSpace space)
    : space_(std::move(space)), coeffs_(space_.dimension(), cplx(0.0)) {}

QuantumState::QuantumState(StateSpace space, std::vector<cplx> coeffs)
    : space_(std::move(space)), coeffs_(std::move(coeffs)) {
    require(coeffs_.size() == space_.dimension(), "coefficient length mismatch");
}

QuantumState QuantumState::basis(const StateSpace &space, std::size_t index) {
    require(index < space.dimension(), "basis index out of range");
    QuantumState s(space);
    s.coeffs_[index] = 1.0;
    return s;
}

double QuantumState::norm() const { return std::sqrt(norm2()); }
double QuantumState::norm2() const { return catmap::norm2(coeffs_); }

namespace {

constexpr std::size_t kPairwiseBlock = 32;

cplx pairwise_inner(const cplx *u, const cplx *v, std::size_t n) {
    if (n <= kPairwiseBlock) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += u[i] * std::conj(v[i]);
        }
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_inner(u, v, half) +
           pairwise_inner(u + half, v + half, n - half);
}

double pairwise_norm2(const cplx *u, std::size_t n) {
    if (n <= kPairwiseBlock) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += std::norm(u[i]);
        }
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_norm2(u, half) + pairwise_norm2(u + half, n - half);
}

std::uint64_t reduce(long long v, std::uint64_t mod) {
    const long long m = static_cast<long long>(mod);
    long long r = v % m;
    return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

} // namespace

cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
    require(u.size() == v.size(), "inner product length mismatch");
    return pairwise_inner(u.data(), v.data(), u.size());
}

cplx inner(const QuantumState &u, const QuantumState &v) {
    require(u.space() == v.space(), "inner product across different spaces");
    return inner(u.coeffs(), v.coeffs());
}

double norm2(std::span<const cplx> u) {
    return pairwise_norm2(u.data(), u.size());
}

DenseMatrix Operator::materialize() const {
    const std::size_t d = dim();
    require(d <= kDenseLimit, "dimension too large for dense materialization");
    DenseMatrix m(d, d);
    std::vector<cplx> e(d, 0.0);
    std::vector<cplx> col(d);
    for (std::size_t j = 0; j < d; ++j) {
        e[j] = 1.0;
        apply(e, col);
        for (std::size_t i = 0; i < d; ++i) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
        }
        e[j] = 0.0;
    }
    return m;
}

TranslationOperator::TranslationOperator(const StateSpace &space, LatticeVector j)
    : N_(space.N()), n_(space.n()), dim_(space.dimension()), j_(std::move(j)) {
    space.require_zero_theta();
    require(j_.size() == 2 * static_cast<std::size_t>(n_),
            "lattice vector has wrong length");
    require(N_ <= (std::uint64_t{1} << 30U), "N too large for translations");
    const std::uint64_t two_n = 2 * N_;
    shift_.resize(n_);
    phase_.resize(n_);
    for (unsigned i = 0; i < n_; ++i) {
        const std::uint64_t p = reduce(j_[2 * i], two_n);
        const std::uint64_t q = reduce(j_[2 * i + 1], two_n);
        shift_[i] = p % N_;
        // U e_m = exp(i pi E / N) e_{m+p},  E = 2 q (m + p) - p q  (mod 2N).
        std::vector<cplx> ph(N_);
        const std::uint64_t pq = (p * q) % two_n;
        for (std::uint64_t m = 0; m < N_; ++m) {
            const std::uint64_t e =
                ((2 * q % two_n) * ((m + p) % two_n) % two_n + two_n - pq) % two_n;
            const double ang = std::numbers::pi * static_cast<double>(e) /
                               static_cast<double>(N_);
            ph[m] = std::polar(1.0, ang);
        }
        phase_[i] = std::move(ph);
    }
}

void TranslationOperator::apply(std::span<const cplx> in,
                                std::span<cplx> out) const {
    require(in.size() == dim_ && out.size() == dim_, "state length mismatch");
    if (n_ == 1) {
        for (std::uint64_t m = 0; m < N_; ++m) {
            out[(m + shift_[0]) % N_] = phase_[0][m] * in[m];
        }
        return;
    }
    std::vector<std::uint64_t> idx(n_, 0);
    for (std::size_t lin = 0; lin < dim_; ++lin) {
        std::size_t target = 0;
        cplx ph = 1.0;
        for (unsigned c = 0; c < n_; ++c) {
            target = target * N_ + (idx[c] + shift_[c]) % N_;
            ph *= phase_[c][idx[c]];
        }
        out[target] = ph * in[lin];
        for (unsigned c = n_; c-- > 0;) {
            if (++idx[c] < N_) {
                break;
            }
            idx[c] = 0;
        }
    }
}

void TranslationOperator::apply_adjoint(std::span<const cplx> in,
                                        std::span<cplx> out) const {
    require(in.size() == dim_ && out.size() == dim_, "state length mismatch");
    if (n_ == 1) {
        for (std::uint64_t m = 0; m < N_; ++m) {
            out[m] = std::conj(phase_[0][m]) * in[(m + shift_[0]) % N_];
        }
        return;
    }
    std::vector<std::uint64_t> idx(n_, 0);
    for (std::size_t lin = 0; lin < dim_; ++lin) {
        std::size_t target = 0;
        cplx ph = 1.0;
        for (unsigned c = 0; c < n_; ++c) {
            target = target * N_ + (idx[c] + shift_[c]) % N_;
            ph *= phase_[c][idx[c]];
        }
        out[lin] = std::conj(ph) * in[target];
        for (unsigned c = n_; c-- > 0;) {
            if (++idx[c] < N_) {
                break;
            }
            idx[c] = 0;
        }
    }
}

TranslationOperator translation(const StateSpace &space, const LatticeVector &j) {
    return {space, j};
}

TranslationOperator translation_rational(const StateSpace &space,
                                         std::span<const Rational> w) {
    LatticeVector j;
    for (const auto &c : w) {
        Rational scaled = c * Rational(BigInt(std::to_string(space.N()), 10));
        scaled.canonicalize();
        if (scaled.get_den() != 1) {
            throw UnsupportedInput("translation vector is not in (1/N) Z^{2n}");
        }
        require(scaled.get_num().fits_slong_p(), "translation too large");
        j.push_back(scaled.get_num().get_si());
    }
    return {space, j};
}

DenseMatrix translation_matrix(const StateSpace &space, const LatticeVector &j) {
    return TranslationOperator(space, j).materialize();
}

bool TrigObservable::is_real(double tol) const {
    for (const auto &[j, c] : terms_) {
        LatticeVector neg(j.size());
        for (std::size_t i = 0; i < j.size(); ++i) {
            neg[i] = -j[i];
        }
        const auto it = terms_.find(neg);
        const cplx partner = it == terms_.end() ? cplx(0.0) : it->second;
        if (std::abs(partner - std::conj(c)) > tol) {
            return false;
        }
    }
    return true;
}

TrigObservable TrigObservable::conjugate() const {
    std::map<LatticeVector, cplx> out;
    for (const auto &[j, c] : terms_) {
        LatticeVector neg(j.size());
        for (std::size_t i = 0; i < j.size(); ++i) {
            neg[i] = -j[i];
        }
        out[neg] += std::conj(c);
    }
    return TrigObservable(std::move(out));
}

double TrigObservable::coefficient_l1() const {
    double s = 0.0;
    for (const auto &[j, c] : terms_) {
        s += std::abs(c);
    }
    return s;
}

WeylOperator::WeylOperator(const StateSpace &space, const TrigObservable &a)
    : dim_(space.dimension()) {
    space.require_zero_theta();
    for (const auto &[j, c] : a.terms()) {
        terms_.emplace_back(c, TranslationOperator(space, j));
    }
    if (dim_ <= kDenseLimit) {
        dense_ = std::make_shared<const DenseMatrix>(Operator::materialize());
    }
}

void WeylOperator::apply(std::span<const cplx> in, std::span<cplx> out) const {
    require(in.size() == dim_ && out.size() == dim_, "state length mismatch");
    std::fill(out.begin(), out.end(), cplx(0.0));
    std::vector<cplx> tmp(dim_);
    for (const auto &[c, u] : terms_) {
        u.apply(in, tmp);
        for (std::size_t i = 0; i < dim_; ++i) {
            out[i] += c * tmp[i];
        }
    }
}

void WeylOperator::apply_adjoint(std::span<const cplx> in,
                                 std::span<cplx> out) const {
    require(in.size() == dim_ && out.size() == dim_, "state length mismatch");
    std::fill(out.begin(), out.end(), cplx(0.0));
    std::vector<cplx> tmp(dim_);
    for (const auto &[c, u] : terms_) {
        u.apply_adjoint(in, tmp);
        for (std::size_t i = 0; i < dim_; ++i) {
            out[i] += std::conj(c) * tmp[i];
        }
    }
}

DenseMatrix WeylOperator::materialize() const {
    if (dense_) {
        return *dense_;
    }
    return Operator::materialize();
}

WeylOperator weyl_quantize(const StateSpace &space, const TrigObservable &a) {
    return {space, a};
}

QuantumState project_gaussian(const StateSpace &space) {
    require(space.n() == 1, "projected Gaussian needs n = 1");
    space.require_zero_theta();
    require(space.N() % 2 == 0, "projected Gaussian needs even N");
    const std::uint64_t N = space.N();
    const double h = space.h();
    const double pref = std::pow(std::numbers::pi * h, -0.25) /
                        std::sqrt(static_cast<double>(N));
    const double scale = std::numbers::pi * static_cast<double>(N);
    std::vector<cplx> c(N);
    parallel_for(N, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) {
            // Nearest representative of j/N to the origin.
            const double x0 = (j <= N / 2)
                                  ? static_cast<double>(j) / static_cast<double>(N)
                                  : static_cast<double>(j) / static_cast<double>(N) - 1.0;
            double sum = std::exp(-scale * x0 * x0);
            for (int dir = -1; dir <= 1; dir += 2) {
                for (long k = 1;; ++k) {
                    const double x = x0 + static_cast<double>(dir * k);
                    const double term = std::exp(-scale * x * x);
                    sum += term;
                    if (term <= 1e-16 * sum) {
                        break;
                    }
                }
            }
            c[j] = pref * sum;
        }
    });
    return {space, std::move(c)};
}

QuantumState tensor(const QuantumState &u, const QuantumState &v) {
    require(u.space().N() == v.space().N(), "tensor factors need equal N");
    std::vector<Rational> theta = u.space().theta();
    theta.insert(theta.end(), v.space().theta().begin(), v.space().theta().end());
    StateSpace sp(u.space().n() + v.space().n(), u.space().N(), theta);
    std::vector<cplx> c(u.size() * v.size());
    for (std::size_t a = 0; a < u.size(); ++a) {
        for (std::size_t b = 0; b < v.size(); ++b) {
            c[a * v.size() + b] = u[a] * v[b];
        }
    }
    return {sp, std::move(c)};
}

DensityGrid position_density(const QuantumState &u, bool centered) {
    require(u.space().n() == 2, "position density needs n = 2");
    const std::uint64_t N = u.space().N();
    DensityGrid g;
    g.N = N;
    g.values.resize(N * N);
    const std::uint64_t s = centered ? N / 2 : 0;
    for (std::uint64_t j1 = 0; j1 < N; ++j1) {
        for (std::uint64_t j2 = 0; j2 < N; ++j2) {
            g.values[((j1 + s) % N) * N + (j2 + s) % N] = std::norm(u[j1 * N + j2]);
        }
    }
    return g;
}

} // namespace catmap
