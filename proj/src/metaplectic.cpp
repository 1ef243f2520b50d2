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

#include "catmap/metaplectic.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <random>

#include <fftw3.h>

#include "catmap/error.hpp"
#include "catmap/parallel.hpp"

namespace catmap {

namespace {

using u128 = unsigned __int128;

std::mutex &fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n)
        : ptr(static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * n))) {
        ensure(ptr != nullptr, "fftw_malloc failed");
    }
    ~FftwBuffer() { fftw_free(ptr); }
    FftwBuffer(const FftwBuffer &) = delete;
    FftwBuffer &operator=(const FftwBuffer &) = delete;
    cplx *data() { return reinterpret_cast<cplx *>(ptr); }
    fftw_complex *ptr;
};

std::uint64_t small_entry(const BigInt &v, const char *what) {
    require(sgn(v) > 0, std::string("metaplectic kernel needs positive entries (") +
                            what + ")");
    return to_u64(v, what);
}

class GaussSumKernel final : public Operator {
  public:
    GaussSumKernel(std::uint64_t N, const IntMatrix &a, KernelPath path)
        : N_(N), path_(path) {
        a_ = small_entry(a(0, 0), "a");
        b_ = small_entry(a(0, 1), "b");
        small_entry(a(1, 0), "c");
        d_ = small_entry(a(1, 1), "d");
        require(b_ <= (std::uint64_t{1} << 20U) && N <= (std::uint64_t{1} << 30U),
                "kernel size too large");
        L_ = N_ * b_;
        two_l_ = 2 * L_;
        a_ %= two_l_;
        d_ %= two_l_;
        pref_ = std::polar(1.0 / std::sqrt(static_cast<double>(L_)),
                           -std::numbers::pi / 4.0);
        unit_.resize(two_l_);
        for (std::uint64_t k = 0; k < two_l_; ++k) {
            unit_[k] = std::polar(1.0, std::numbers::pi * static_cast<double>(k) /
                                           static_cast<double>(L_));
        }
        if (path_ == KernelPath::Fft) {
            FftwBuffer tmp_in(L_);
            FftwBuffer tmp_out(L_);
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            const int len = static_cast<int>(L_);
            forward_ = fftw_plan_dft_1d(len, tmp_in.ptr, tmp_out.ptr, FFTW_FORWARD,
                                        FFTW_ESTIMATE);
            backward_ = fftw_plan_dft_1d(len, tmp_in.ptr, tmp_out.ptr,
                                         FFTW_BACKWARD, FFTW_ESTIMATE);
            ensure(forward_ != nullptr && backward_ != nullptr,
                   "FFT planning failed");
        }
        if (path_ == KernelPath::Dense) {
            require(N_ <= kDenseLimit, "dense kernel needs N <= 4096");
            dense_ = DenseMatrix(N_, N_);
            for (std::uint64_t m = 0; m < N_; ++m) {
                for (std::uint64_t j = 0; j < N_; ++j) {
                    cplx s = 0.0;
                    for (std::uint64_t r = 0; r < b_; ++r) {
                        s += unit_[exponent(m, j + N_ * r)];
                    }
                    dense_(static_cast<Eigen::Index>(m),
                           static_cast<Eigen::Index>(j)) = pref_ * s;
                }
            }
        }
    }

    ~GaussSumKernel() override {
        if (forward_ != nullptr || backward_ != nullptr) {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            fftw_destroy_plan(forward_);
            fftw_destroy_plan(backward_);
        }
    }

    GaussSumKernel(const GaussSumKernel &) = delete;
    GaussSumKernel &operator=(const GaussSumKernel &) = delete;

    [[nodiscard]] std::size_t dim() const override { return N_; }

    void apply(std::span<const cplx> in, std::span<cplx> out) const override {
        require(in.size() == N_ && out.size() == N_, "state length mismatch");
        switch (path_) {
        case KernelPath::Fft:
            apply_fft(in, out);
            break;
        case KernelPath::Streamed:
            apply_streamed(in, out, false);
            break;
        case KernelPath::Dense:
            Eigen::Map<Eigen::VectorXcd>(out.data(), static_cast<Eigen::Index>(N_)) =
                dense_ * Eigen::Map<const Eigen::VectorXcd>(
                             in.data(), static_cast<Eigen::Index>(N_));
            break;
        }
    }

    void apply_adjoint(std::span<const cplx> in,
                       std::span<cplx> out) const override {
        require(in.size() == N_ && out.size() == N_, "state length mismatch");
        switch (path_) {
        case KernelPath::Fft:
            apply_adjoint_fft(in, out);
            break;
        case KernelPath::Streamed:
            apply_streamed(in, out, true);
            break;
        case KernelPath::Dense:
            Eigen::Map<Eigen::VectorXcd>(out.data(), static_cast<Eigen::Index>(N_)) =
                dense_.adjoint() * Eigen::Map<const Eigen::VectorXcd>(
                                       in.data(), static_cast<Eigen::Index>(N_));
            break;
        }
    }

    [[nodiscard]] DenseMatrix materialize() const override {
        if (path_ == KernelPath::Dense) {
            return dense_;
        }
        return Operator::materialize();
    }

  private:
    // (d m^2 - 2 m J + a J^2) mod 2L
    [[nodiscard]] std::uint64_t exponent(std::uint64_t m, std::uint64_t J) const {
        const u128 mm = m % two_l_;
        const u128 jj = J % two_l_;
        const u128 t1 = (static_cast<u128>(d_) * ((mm * mm) % two_l_)) % two_l_;
        const u128 t2 = (2 * mm * jj) % two_l_;
        const u128 t3 = (static_cast<u128>(a_) * ((jj * jj) % two_l_)) % two_l_;
        return static_cast<std::uint64_t>((t1 + t3 + two_l_ - t2) % two_l_);
    }

    [[nodiscard]] std::uint64_t chirp(std::uint64_t coef, std::uint64_t v) const {
        const u128 vv = v % two_l_;
        return static_cast<std::uint64_t>(
            (static_cast<u128>(coef) * ((vv * vv) % two_l_)) % two_l_);
    }

    void apply_fft(std::span<const cplx> in, std::span<cplx> out) const {
        FftwBuffer x(L_);
        FftwBuffer y(L_);
        cplx *xd = x.data();
        for (std::uint64_t J = 0; J < L_; ++J) {
            xd[J] = unit_[chirp(a_, J)] * in[J % N_];
        }
        fftw_execute_dft(forward_, x.ptr, y.ptr);
        const cplx *yd = y.data();
        for (std::uint64_t m = 0; m < N_; ++m) {
            out[m] = pref_ * unit_[chirp(d_, m)] * yd[m];
        }
    }

    void apply_adjoint_fft(std::span<const cplx> in, std::span<cplx> out) const {
        FftwBuffer x(L_);
        FftwBuffer y(L_);
        cplx *xd = x.data();
        for (std::uint64_t m = 0; m < N_; ++m) {
            xd[m] = std::conj(unit_[chirp(d_, m)]) * in[m];
        }
        for (std::uint64_t m = N_; m < L_; ++m) {
            xd[m] = 0.0;
        }
        fftw_execute_dft(backward_, x.ptr, y.ptr);
        const cplx *yd = y.data();
        const cplx cp = std::conj(pref_);
        for (std::uint64_t j = 0; j < N_; ++j) {
            cplx s = 0.0;
            for (std::uint64_t r = 0; r < b_; ++r) {
                const std::uint64_t J = j + N_ * r;
                s += std::conj(unit_[chirp(a_, J)]) * yd[J];
            }
            out[j] = cp * s;
        }
    }

    void apply_streamed(std::span<const cplx> in, std::span<cplx> out,
                        bool adjoint) const {
        if (!adjoint) {
            parallel_for(N_, [&](std::size_t lo, std::size_t hi) {
                for (std::size_t m = lo; m < hi; ++m) {
                    cplx s = 0.0;
                    for (std::uint64_t J = 0; J < L_; ++J) {
                        s += unit_[exponent(m, J)] * in[J % N_];
                    }
                    out[m] = pref_ * s;
                }
            });
            return;
        }
        const cplx cp = std::conj(pref_);
        parallel_for(N_, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t j = lo; j < hi; ++j) {
                cplx s = 0.0;
                for (std::uint64_t m = 0; m < N_; ++m) {
                    cplx e = 0.0;
                    for (std::uint64_t r = 0; r < b_; ++r) {
                        e += unit_[exponent(m, j + N_ * r)];
                    }
                    s += std::conj(e) * in[m];
                }
                out[j] = cp * s;
            }
        });
    }

    std::uint64_t N_;
    KernelPath path_;
    std::uint64_t a_ = 0;
    std::uint64_t b_ = 0;
    std::uint64_t d_ = 0;
    std::uint64_t L_ = 0;
    std::uint64_t two_l_ = 0;
    cplx pref_;
    std::vector<cplx> unit_; // exp(i pi k / L), k < 2L
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
    DenseMatrix dense_;
};

class IdentityOp final : public Operator {
  public:
    explicit IdentityOp(std::size_t d) : d_(d) {}
    [[nodiscard]] std::size_t dim() const override { return d_; }
    void apply(std::span<const cplx> in, std::span<cplx> out) const override {
        std::copy(in.begin(), in.end(), out.begin());
    }
    void apply_adjoint(std::span<const cplx> in,
                       std::span<cplx> out) const override {
        std::copy(in.begin(), in.end(), out.begin());
    }

  private:
    std::size_t d_;
};

class RotationOp final : public Operator {
  public:
    explicit RotationOp(std::uint64_t N) : N_(N) {}
    [[nodiscard]] std::size_t dim() const override { return N_ * N_; }
    // out[m1][m2] = in[-m2][m1]
    void apply(std::span<const cplx> in, std::span<cplx> out) const override {
        require(in.size() == dim() && out.size() == dim(), "state length mismatch");
        for (std::uint64_t m1 = 0; m1 < N_; ++m1) {
            for (std::uint64_t m2 = 0; m2 < N_; ++m2) {
                out[m1 * N_ + m2] = in[((N_ - m2) % N_) * N_ + m1];
            }
        }
    }
    // out[i1][i2] = in[i2][-i1]
    void apply_adjoint(std::span<const cplx> in,
                       std::span<cplx> out) const override {
        require(in.size() == dim() && out.size() == dim(), "state length mismatch");
        for (std::uint64_t i1 = 0; i1 < N_; ++i1) {
            for (std::uint64_t i2 = 0; i2 < N_; ++i2) {
                out[i1 * N_ + i2] = in[i2 * N_ + (N_ - i1) % N_];
            }
        }
    }

  private:
    std::uint64_t N_;
};

class TensorOp final : public Operator {
  public:
    TensorOp(std::shared_ptr<const Operator> p1, std::shared_ptr<const Operator> p2)
        : p1_(std::move(p1)), p2_(std::move(p2)) {}
    [[nodiscard]] std::size_t dim() const override {
        return p1_->dim() * p2_->dim();
    }
    void apply(std::span<const cplx> in, std::span<cplx> out) const override {
        run(in, out, false);
    }
    void apply_adjoint(std::span<const cplx> in,
                       std::span<cplx> out) const override {
        run(in, out, true);
    }

  private:
    void run(std::span<const cplx> in, std::span<cplx> out, bool adjoint) const {
        const std::size_t d1 = p1_->dim();
        const std::size_t d2 = p2_->dim();
        require(in.size() == d1 * d2 && out.size() == d1 * d2,
                "state length mismatch");
        std::vector<cplx> mid(d1 * d2);
        parallel_for(d1, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t r = lo; r < hi; ++r) {
                auto src = in.subspan(r * d2, d2);
                auto dst = std::span<cplx>(mid).subspan(r * d2, d2);
                if (adjoint) {
                    p2_->apply_adjoint(src, dst);
                } else {
                    p2_->apply(src, dst);
                }
            }
        }, 1);
        parallel_for(d2, [&](std::size_t lo, std::size_t hi) {
            std::vector<cplx> col(d1);
            std::vector<cplx> res(d1);
            for (std::size_t c = lo; c < hi; ++c) {
                for (std::size_t r = 0; r < d1; ++r) {
                    col[r] = mid[r * d2 + c];
                }
                if (adjoint) {
                    p1_->apply_adjoint(col, res);
                } else {
                    p1_->apply(col, res);
                }
                for (std::size_t r = 0; r < d1; ++r) {
                    out[r * d2 + c] = res[r];
                }
            }
        }, 1);
    }

    std::shared_ptr<const Operator> p1_;
    std::shared_ptr<const Operator> p2_;
};

class ComposeOp final : public Operator {
  public:
    ComposeOp(std::shared_ptr<const Operator> outer,
              std::shared_ptr<const Operator> inner)
        : outer_(std::move(outer)), inner_(std::move(inner)) {}
    [[nodiscard]] std::size_t dim() const override { return inner_->dim(); }
    void apply(std::span<const cplx> in, std::span<cplx> out) const override {
        std::vector<cplx> mid(in.size());
        inner_->apply(in, mid);
        outer_->apply(mid, out);
    }
    void apply_adjoint(std::span<const cplx> in,
                       std::span<cplx> out) const override {
        std::vector<cplx> mid(in.size());
        outer_->apply_adjoint(in, mid);
        inner_->apply_adjoint(mid, out);
    }

  private:
    std::shared_ptr<const Operator> outer_;
    std::shared_ptr<const Operator> inner_;
};

SymplecticMatrix rotation_classical() {
    return SymplecticMatrix(IntMatrix{
        {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}});
}

std::vector<std::vector<cplx>> probe_vectors(std::size_t d) {
    std::vector<std::vector<cplx>> probes;
    std::vector<cplx> e0(d, 0.0);
    e0[0] = 1.0;
    probes.push_back(std::move(e0));
    std::vector<cplx> emid(d, 0.0);
    emid[d / 2] = 1.0;
    probes.push_back(std::move(emid));
    std::mt19937_64 rng(0x5eedULL);
    std::normal_distribution<double> g;
    for (int k = 0; k < 2; ++k) {
        std::vector<cplx> v(d);
        for (auto &c : v) {
            c = cplx(g(rng), g(rng));
        }
        const double s = 1.0 / std::sqrt(norm2(v));
        for (auto &c : v) {
            c *= s;
        }
        probes.push_back(std::move(v));
    }
    return probes;
}

double max_abs_diff(std::span<const cplx> x, std::span<const cplx> y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        m = std::max(m, std::abs(x[i] - y[i]));
    }
    return m;
}

LatticeVector classical_preimage(const SymplecticMatrix &inv,
                                 const LatticeVector &j) {
    std::vector<BigInt> jb;
    for (long long v : j) {
        jb.emplace_back(static_cast<long>(v));
    }
    const std::vector<BigInt> img = inv.matrix().apply(jb);
    LatticeVector out;
    for (const auto &v : img) {
        require(v.fits_slong_p(), "lattice image too large");
        out.push_back(v.get_si());
    }
    return out;
}

} // namespace

Propagator::Propagator(StateSpace space, SymplecticMatrix classical,
                       std::shared_ptr<const Operator> op)
    : space_(std::move(space)), classical_(std::move(classical)),
      op_(std::move(op)) {
    require(op_ != nullptr, "null operator");
    require(op_->dim() == space_.dimension(), "operator dimension mismatch");
    require(classical_.n() == space_.n(), "classical map dimension mismatch");
}

QuantumState Propagator::apply(const QuantumState &u) const {
    require(u.space() == space_, "state lives in a different space");
    QuantumState out(space_);
    op_->apply(u.coeffs(), out.coeffs());
    return out;
}

QuantumState Propagator::apply_inverse(const QuantumState &u) const {
    require(u.space() == space_, "state lives in a different space");
    QuantumState out(space_);
    op_->apply_adjoint(u.coeffs(), out.coeffs());
    return out;
}

std::optional<DenseMatrix> Propagator::dense() const {
    if (dim() > kDenseLimit) {
        return std::nullopt;
    }
    return op_->materialize();
}

Propagator metaplectic_sl2(const StateSpace &space, const SymplecticMatrix &a,
                           KernelPath path) {
    require(space.n() == 1 && a.n() == 1, "metaplectic kernel needs n = 1");
    space.require_zero_theta();
    require(space.N() % 2 == 0, "metaplectic kernel needs even N");
    try {
        return {space, a,
                std::make_shared<GaussSumKernel>(space.N(), a.matrix(), path)};
    } catch (const PreconditionError &e) {
        throw UnsupportedInput(e.what());
    }
}

Propagator identity_propagator(const StateSpace &space) {
    return {space, SymplecticMatrix(IntMatrix::identity(2 * space.n())),
            std::make_shared<IdentityOp>(space.dimension())};
}

Propagator rotation_propagator(const StateSpace &space) {
    if (space.n() != 2) {
        throw UnsupportedInput("rotation propagator needs a two-dimensional space");
    }
    space.require_zero_theta();
    require(space.N() % 2 == 0, "rotation propagator needs even N");
    return {space, rotation_classical(), std::make_shared<RotationOp>(space.N())};
}

Propagator tensor(const Propagator &p1, const Propagator &p2) {
    require(p1.space().N() == p2.space().N(), "tensor factors need equal N");
    std::vector<Rational> theta = p1.space().theta();
    theta.insert(theta.end(), p2.space().theta().begin(),
                 p2.space().theta().end());
    StateSpace sp(p1.space().n() + p2.space().n(), p1.space().N(), theta);
    return {sp, p1.classical().direct_sum(p2.classical()),
            std::make_shared<TensorOp>(p1.op_ptr(), p2.op_ptr())};
}

Propagator compose(const Propagator &outer, const Propagator &inner) {
    require(outer.space() == inner.space(), "composition across spaces");
    return {inner.space(), outer.classical() * inner.classical(),
            std::make_shared<ComposeOp>(outer.op_ptr(), inner.op_ptr())};
}

double egorov_defect(const Propagator &p, int window) {
    require(window >= 0, "window must be nonnegative");
    const StateSpace &sp = p.space();
    const SymplecticMatrix inv = p.classical().inverse();
    const std::size_t d = 2 * sp.n();
    const std::optional<DenseMatrix> m = p.dense();
    const std::vector<std::vector<cplx>> probes =
        m ? std::vector<std::vector<cplx>>{} : probe_vectors(p.dim());

    double worst = 0.0;
    LatticeVector j(d, -window);
    while (true) {
        const LatticeVector jinv = classical_preimage(inv, j);
        if (m) {
            const DenseMatrix u = translation_matrix(sp, j);
            const DenseMatrix u2 = translation_matrix(sp, jinv);
            const DenseMatrix diff = m->adjoint() * u * (*m) - u2;
            worst = std::max(worst, diff.cwiseAbs().maxCoeff());
        } else {
            const TranslationOperator u(sp, j);
            const TranslationOperator u2(sp, jinv);
            std::vector<cplx> a(p.dim());
            std::vector<cplx> b(p.dim());
            std::vector<cplx> c(p.dim());
            for (const auto &x : probes) {
                p.apply(x, a);
                u.apply(a, b);
                p.apply_inverse(b, a);
                u2.apply(x, c);
                worst = std::max(worst, max_abs_diff(a, c));
            }
        }
        std::size_t k = 0;
        while (k < d && ++j[k] > window) {
            j[k] = -window;
            ++k;
        }
        if (k == d) {
            break;
        }
    }
    return worst;
}

PeriodPhase period_phase(const Propagator &p, std::uint64_t period) {
    require(period >= 1, "period must be positive");
    PeriodPhase out;
    out.period = period;
    const std::size_t d = p.dim();
    if (const std::optional<DenseMatrix> m = p.dense()) {
        DenseMatrix acc = DenseMatrix::Identity(static_cast<Eigen::Index>(d),
                                                static_cast<Eigen::Index>(d));
        for (std::uint64_t k = 0; k < period; ++k) {
            acc = (*m) * acc;
        }
        const cplx tr = acc.trace() / static_cast<double>(d);
        out.phase = std::arg(tr);
        const DenseMatrix diff =
            acc - std::polar(1.0, out.phase) *
                      DenseMatrix::Identity(static_cast<Eigen::Index>(d),
                                            static_cast<Eigen::Index>(d));
        out.defect = diff.cwiseAbs().maxCoeff();
    } else {
        const auto probes = probe_vectors(d);
        std::vector<std::vector<cplx>> images;
        cplx acc = 0.0;
        for (const auto &x : probes) {
            std::vector<cplx> y = x;
            std::vector<cplx> tmp(d);
            for (std::uint64_t k = 0; k < period; ++k) {
                p.apply(y, tmp);
                y.swap(tmp);
            }
            acc += inner(y, x);
            images.push_back(std::move(y));
        }
        out.phase = std::arg(acc);
        const cplx e = std::polar(1.0, out.phase);
        for (std::size_t i = 0; i < probes.size(); ++i) {
            for (std::size_t k = 0; k < d; ++k) {
                out.defect =
                    std::max(out.defect, std::abs(images[i][k] - e * probes[i][k]));
            }
        }
    }
    if (out.phase >= std::numbers::pi) {
        out.phase -= 2.0 * std::numbers::pi;
    }
    if (out.defect > 1e-6) {
        throw InvariantError("period-phase violation: defect " +
                             std::to_string(out.defect));
    }
    return out;
}

double unitarity_defect(const Propagator &p) {
    const std::optional<DenseMatrix> m = p.dense();
    require(m.has_value(), "unitarity check needs a dense materialization");
    const auto n = static_cast<Eigen::Index>(p.dim());
    return (m->adjoint() * (*m) - DenseMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

} // namespace catmap
