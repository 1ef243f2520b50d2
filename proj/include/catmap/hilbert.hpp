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

/**
 * @file
 * Finite quantum state spaces on the torus, quantum translations, Weyl
 * quantization of trigonometric polynomials and the projected Gaussian.
 *
 * Basis vectors e_j (j in Z_N^n) are normalized delta combs supported on
 * x in j/N + Z^n. Multi-indices are stored row-major.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "catmap/symplectic.hpp"

namespace catmap {

using cplx = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;

/// Dense materialization is allowed up to this dimension.
inline constexpr std::size_t kDenseLimit = 4096;

class StateSpace {
  public:
    /// theta defaults to the origin; other values are carried but exact
    /// matrix paths refuse them.
    StateSpace(unsigned n, std::uint64_t N, std::vector<Rational> theta = {});

    [[nodiscard]] unsigned n() const { return n_; }
    [[nodiscard]] std::uint64_t N() const { return N_; }
    [[nodiscard]] double h() const;
    [[nodiscard]] std::size_t dimension() const { return dim_; }
    [[nodiscard]] const std::vector<Rational> &theta() const { return theta_; }
    [[nodiscard]] bool theta_is_zero() const;

    /// Throws UnsupportedInput unless theta = 0.
    void require_zero_theta() const;

    friend bool operator==(const StateSpace &a, const StateSpace &b);

  private:
    unsigned n_;
    std::uint64_t N_;
    std::size_t dim_;
    std::vector<Rational> theta_;
};

class QuantumState {
  public:
    explicit QuantumState(StateSpace space);
    QuantumState(StateSpace space, std::vector<cplx> coeffs);

    static QuantumState basis(const StateSpace &space, std::size_t index);

    [[nodiscard]] const StateSpace &space() const { return space_; }
    [[nodiscard]] std::span<const cplx> coeffs() const { return coeffs_; }
    [[nodiscard]] std::span<cplx> coeffs() { return coeffs_; }
    [[nodiscard]] std::size_t size() const { return coeffs_.size(); }
    cplx &operator[](std::size_t i) { return coeffs_[i]; }
    const cplx &operator[](std::size_t i) const { return coeffs_[i]; }

    [[nodiscard]] double norm() const;
    [[nodiscard]] double norm2() const;

  private:
    StateSpace space_;
    std::vector<cplx> coeffs_;
};

/// <u, v> = sum u_i conj(v_i), linear in the first slot, pairwise summed.
cplx inner(std::span<const cplx> u, std::span<const cplx> v);
cplx inner(const QuantumState &u, const QuantumState &v);
double norm2(std::span<const cplx> u);

/// Linear map on C^dim given matrix-free.
class Operator {
  public:
    virtual ~Operator() = default;
    [[nodiscard]] virtual std::size_t dim() const = 0;
    virtual void apply(std::span<const cplx> in, std::span<cplx> out) const = 0;
    virtual void apply_adjoint(std::span<const cplx> in,
                               std::span<cplx> out) const = 0;

    /// Column-by-column materialization; requires dim() <= kDenseLimit.
    [[nodiscard]] virtual DenseMatrix materialize() const;
};

/// Integer lattice vector j in Z^{2n}, interleaved (p1, q1, p2, q2, ...);
/// the translation is by omega = j / N.
using LatticeVector = std::vector<long long>;

/// The quantum translation U_{j/N} acting on H_N(0).
class TranslationOperator : public Operator {
  public:
    TranslationOperator(const StateSpace &space, LatticeVector j);

    [[nodiscard]] std::size_t dim() const override { return dim_; }
    void apply(std::span<const cplx> in, std::span<cplx> out) const override;
    void apply_adjoint(std::span<const cplx> in,
                       std::span<cplx> out) const override;

    [[nodiscard]] const LatticeVector &lattice_vector() const { return j_; }

  private:
    std::uint64_t N_;
    unsigned n_;
    std::size_t dim_;
    LatticeVector j_;
    std::vector<std::uint64_t> shift_; // p mod N per coordinate
    std::vector<std::vector<cplx>> phase_; // per coordinate, indexed by source m
};

TranslationOperator translation(const StateSpace &space, const LatticeVector &j);

/// Translation by a rational vector w; N w must be integral.
TranslationOperator translation_rational(const StateSpace &space,
                                         std::span<const Rational> w);

/// Dense matrix of U_{j/N}.
DenseMatrix translation_matrix(const StateSpace &space, const LatticeVector &j);

/// Finite sum a(z) = sum_j c_j exp(2 pi i sigma(j, z)).
class TrigObservable {
  public:
    TrigObservable() = default;
    explicit TrigObservable(std::map<LatticeVector, cplx> terms)
        : terms_(std::move(terms)) {}

    void add(const LatticeVector &j, cplx c) { terms_[j] += c; }
    [[nodiscard]] const std::map<LatticeVector, cplx> &terms() const {
        return terms_;
    }
    /// c_{-j} == conj(c_j) for every j.
    [[nodiscard]] bool is_real(double tol = 0.0) const;
    /// Symbol of conj(a).
    [[nodiscard]] TrigObservable conjugate() const;
    /// Sum of |c_j|.
    [[nodiscard]] double coefficient_l1() const;

  private:
    std::map<LatticeVector, cplx> terms_;
};

/// Op_N(a) = sum_j c_j U_{j/N}.
class WeylOperator : public Operator {
  public:
    WeylOperator(const StateSpace &space, const TrigObservable &a);

    [[nodiscard]] std::size_t dim() const override { return dim_; }
    void apply(std::span<const cplx> in, std::span<cplx> out) const override;
    void apply_adjoint(std::span<const cplx> in,
                       std::span<cplx> out) const override;
    [[nodiscard]] DenseMatrix materialize() const override;

    /// Dense matrix when the dimension allows it, else nullptr.
    [[nodiscard]] const DenseMatrix *dense() const { return dense_.get(); }

  private:
    std::size_t dim_;
    std::vector<std::pair<cplx, TranslationOperator>> terms_;
    std::shared_ptr<const DenseMatrix> dense_;
};

WeylOperator weyl_quantize(const StateSpace &space, const TrigObservable &a);

/// Gaussian coherent state at the origin projected to H_N(0).
QuantumState project_gaussian(const StateSpace &space);

QuantumState tensor(const QuantumState &u, const QuantumState &v);

/// N x N grid of |u(j1, j2)|^2, optionally shifted to center (N/2, N/2).
struct DensityGrid {
    std::uint64_t N = 0;
    std::vector<double> values; // row-major, index j1 * N + j2
    [[nodiscard]] double at(std::size_t j1, std::size_t j2) const {
        return values[j1 * N + j2];
    }
};

DensityGrid position_density(const QuantumState &u, bool centered = false);

} // namespace catmap
