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
 * Unitary propagators quantizing integer symplectic maps.
 *
 * For A = [[a,b],[c,d]] with positive entries and even N the propagator has
 * entries
 *
 *   M[m][j] = e^{-i pi/4} (N b)^{-1/2}
 *             sum_{r=0}^{b-1} exp(i pi (d m^2 - 2 m J + a J^2) / (N b)),
 *
 * with J = j + N r. Summing over J in [0, N b) turns M v into one DFT of
 * length N b between two chirps, which is the default application path.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "catmap/hilbert.hpp"
#include "catmap/symplectic.hpp"

namespace catmap {

/// How a Gauss-sum propagator applies itself.
enum class KernelPath {
    Fft,      ///< chirp / DFT / chirp, O(N b log(N b))
    Streamed, ///< entries evaluated on the fly, O(N^2 b) time, O(N b) memory
    Dense,    ///< materialized matrix, N <= kDenseLimit
};

class Propagator {
  public:
    Propagator(StateSpace space, SymplecticMatrix classical,
               std::shared_ptr<const Operator> op);

    [[nodiscard]] const StateSpace &space() const { return space_; }
    [[nodiscard]] const SymplecticMatrix &classical() const { return classical_; }
    [[nodiscard]] std::size_t dim() const { return op_->dim(); }
    [[nodiscard]] const Operator &op() const { return *op_; }
    [[nodiscard]] std::shared_ptr<const Operator> op_ptr() const { return op_; }

    void apply(std::span<const cplx> in, std::span<cplx> out) const {
        op_->apply(in, out);
    }
    void apply_inverse(std::span<const cplx> in, std::span<cplx> out) const {
        op_->apply_adjoint(in, out);
    }
    [[nodiscard]] QuantumState apply(const QuantumState &u) const;
    [[nodiscard]] QuantumState apply_inverse(const QuantumState &u) const;

    /// Materialized matrix when dim() <= kDenseLimit.
    [[nodiscard]] std::optional<DenseMatrix> dense() const;

  private:
    StateSpace space_;
    SymplecticMatrix classical_;
    std::shared_ptr<const Operator> op_;
};

Propagator metaplectic_sl2(const StateSpace &space, const SymplecticMatrix &a,
                           KernelPath path = KernelPath::Fft);

Propagator identity_propagator(const StateSpace &space);

/// u(x1, x2) -> u(-x2, x1) on a two-dimensional space; classical map
/// (x1, xi1, x2, xi2) -> (x2, xi2, -x1, -xi1).
Propagator rotation_propagator(const StateSpace &space);

/// P1 (x) P2 on the product space, quantizing the block-diagonal sum.
Propagator tensor(const Propagator &p1, const Propagator &p2);

/// outer * inner (inner is applied first).
Propagator compose(const Propagator &outer, const Propagator &inner);

/// max over |j|_inf <= window of || M^{-1} U_{j/N} M - U_{A^{-1} j / N} ||_max.
/// Above the dense limit the norm is estimated on a fixed set of probe vectors.
double egorov_defect(const Propagator &p, int window);

struct PeriodPhase {
    std::uint64_t period = 0;
    double phase = 0.0;  ///< in [-pi, pi)
    double defect = 0.0; ///< || M^P - e^{i phase} I ||_max
};

/// Measure the phase of M^period. Above the dense limit the defect is
/// measured on probe vectors. Throws InvariantError when defect > 1e-6.
PeriodPhase period_phase(const Propagator &p, std::uint64_t period);

/// max | P^dagger P - I | over a dense materialization.
double unitarity_defect(const Propagator &p);

} // namespace catmap
