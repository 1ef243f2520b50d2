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
 * Gaussian overlaps, lattice overlap sums and the scarred eigenfunction
 * u = P^{-1/2} sum_t v_t (x) w_t of M (x) M, kept in factored form.
 */
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "catmap/hilbert.hpp"
#include "catmap/metaplectic.hpp"
#include "catmap/symplectic.hpp"

namespace catmap {

using Vec2 = std::array<double, 2>;
using Lattice2 = std::array<long long, 2>;

/// <U_w G_h, M_A G_h> for symmetric positive A, w = (y, eta).
cplx overlap_closed_form(const SymplecticMatrix &a, Vec2 omega, double h);

struct QuadratureOptions {
    double tolerance = 1e-12;
    unsigned max_levels = 6;
};

/// The same overlap by nested trapezoid quadrature of the kernel integral.
cplx overlap_quadrature(const SymplecticMatrix &a, Vec2 omega, double h,
                        QuadratureOptions opts = {});

struct OverlapSample {
    Vec2 omega{};
    std::uint64_t N = 0;
    double h = 0.0;
    cplx closed;
    cplx quadrature;
    double error = 0.0;
};

/// Compare both overlap evaluations at seeded points omega in the disk of
/// radius 2 with h = 1 / (2 pi N), N drawn from Ns.
std::vector<OverlapSample> overlap_samples(const SymplecticMatrix &a, unsigned count,
                                           std::uint64_t seed,
                                           const std::vector<std::uint64_t> &Ns = {34, 144});

/// sqrt(2 / (lambda^t + lambda^-t)).
double gaussian_autocorrelation(double lambda, long long t);

/// sum_{t in Z} 2 / (lambda^t + lambda^-t).
double s1(double lambda);

struct LatticeSum {
    double total = 0.0;
    double origin_term = 0.0;
    std::size_t terms = 0;
    [[nodiscard]] double off_origin() const { return total - origin_term; }
};

/// sum over l in Z^2 of |<M_A^q G_h, U_{l+c} G_h>|.
LatticeSum lattice_overlap_sum(const SymplecticMatrix &a, long long q, Vec2 c,
                               double h);

struct ScarConfig {
    SymplecticMatrix B;
    unsigned k = 0;
    std::uint64_t N = 0;
    std::uint64_t P = 0;
    double phase = 0.0;
    double phase_defect = 0.0;
    double lambda = 0.0;
};

/// Validate B and k, compute N_k, the period and the measured phase.
ScarConfig make_scar_config(const SymplecticMatrix &b, unsigned k);

class ScarEnsemble {
  public:
    ScarEnsemble(ScarConfig config, Propagator m, Eigen::MatrixXcd states);

    [[nodiscard]] const ScarConfig &config() const { return config_; }
    [[nodiscard]] const Propagator &propagator() const { return m_; }
    [[nodiscard]] std::uint64_t N() const { return config_.N; }
    [[nodiscard]] std::uint64_t P() const { return config_.P; }

    /// x_t = e^{-i phase t / P} M^t G_N for t in [-P/2, P).
    [[nodiscard]] Eigen::VectorXcd state(long long t) const;
    /// v_t for t in [-P/2, P/2).
    [[nodiscard]] Eigen::VectorXcd v(long long t) const { return state(t); }
    /// w_t = x_{t + P/2}.
    [[nodiscard]] Eigen::VectorXcd w(long long t) const {
        return state(t + static_cast<long long>(P() / 2));
    }
    /// The N x P block of v_t (columns t = -P/2 .. P/2 - 1).
    [[nodiscard]] auto v_block() const {
        return states_.leftCols(static_cast<Eigen::Index>(P()));
    }
    [[nodiscard]] auto w_block() const {
        return states_.middleCols(static_cast<Eigen::Index>(P() / 2),
                                  static_cast<Eigen::Index>(P()));
    }

    /// ||u||^2 from the factored form.
    [[nodiscard]] double norm2() const;
    /// ||u_I||^2 for I = [beta, beta + alpha) inside [-P/2, P/2).
    [[nodiscard]] double partial_norm2(long long beta, std::uint64_t alpha) const;

    /// One row of the position density |u(j1, .)|^2; with centered the grid
    /// is shifted so that (0, 0) lands at (N/2, N/2).
    void density_row(std::uint64_t row, bool centered, std::span<double> out) const;

  private:
    ScarConfig config_;
    Propagator m_;
    Eigen::MatrixXcd states_;
};

ScarEnsemble build_scar(const ScarConfig &config);

/// u as a vector of length N^2 (row-major); N^2 must stay below 2^26.
QuantumState materialize(const ScarEnsemble &scar);

/// <(U_{j/N} (x) U_{k/N}) u, u>.
cplx matrix_element(const ScarEnsemble &scar, Lattice2 j, Lattice2 k);

/// Limit value of the ratio for the four cases of the measure.
double measure_target(Lattice2 j, Lattice2 k);

struct ScanRow {
    Lattice2 j{};
    Lattice2 k{};
    cplx ratio;
    double target = 0.0;
    double error = 0.0;
};

std::vector<ScanRow> semiclassical_scan(const ScarEnsemble &scar, int window);

/// e^{2 i phase / P}, the eigenvalue of u under both propagators below.
cplx scar_eigenvalue(const ScarConfig &config);

/// M_B (x) M_B on the two-dimensional space.
Propagator product_propagator(const ScarEnsemble &scar);

/// (M_B (x) M_B) M_R, quantizing [[0, B], [-B, 0]].
Propagator tight_propagator(const ScarEnsemble &scar);

/// || P u - z u || / ||u|| on the materialized state.
double eigen_residual(const Propagator &p, const QuantumState &u, cplx z);

/// Rayleigh quotient <P u, u> / ||u||^2.
cplx rayleigh_quotient(const Propagator &p, const QuantumState &u);

/// Mass of the density in {|j1| <= N/16} U {|j2| <= N/16} (circular
/// distance to 0) and the fraction of cells in that set.
struct BandMass {
    double mass_fraction = 0.0;
    double area_fraction = 0.0;
};
BandMass axis_band_mass(const ScarEnsemble &scar);

} // namespace catmap
