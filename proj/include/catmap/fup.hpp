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
 * Discrete porous sets, porosity validators, and norm-decay experiments for
 * uncertainty principles on a size-M grid with h = 1/M.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace catmap {

/// A subset of the grid Z_M^d. Cell c stands for the point (c + 1/2) / M.
class DiscreteSet {
  public:
    DiscreteSet(std::uint32_t M, unsigned d);

    [[nodiscard]] std::uint32_t M() const { return M_; }
    [[nodiscard]] unsigned dims() const { return d_; }
    [[nodiscard]] std::size_t size() const { return count_; }
    [[nodiscard]] bool empty() const { return count_ == 0; }

    [[nodiscard]] bool contains(const std::vector<std::uint32_t> &cell) const;
    void insert(const std::vector<std::uint32_t> &cell);
    /// All cells, sorted row-major.
    [[nodiscard]] std::vector<std::vector<std::uint32_t>> cells() const;
    /// Flat row-major indices of the cells, sorted.
    [[nodiscard]] std::vector<std::uint64_t> flat_cells() const;
    [[nodiscard]] bool subset_of(const DiscreteSet &other) const;

    static DiscreteSet full(std::uint32_t M, unsigned d);

    friend bool operator==(const DiscreteSet &a, const DiscreteSet &b) = default;

  private:
    friend DiscreteSet neighborhood(const DiscreteSet &x, double delta);
    [[nodiscard]] std::uint64_t flat(const std::vector<std::uint32_t> &cell) const;

    std::uint32_t M_;
    unsigned d_;
    std::size_t count_ = 0;
    std::vector<std::uint8_t> mask_;
};

/// Mid-third Cantor iterate: M = 3^depth, cells whose base-3 digits avoid 1.
DiscreteSet cantor_set(unsigned depth);

/// Cartesian product of two one-dimensional sets on the same grid.
DiscreteSet product(const DiscreteSet &a, const DiscreteSet &b);

/// Minkowski dilation by a Euclidean ball of ceil(delta * M) cells.
DiscreteSet neighborhood(const DiscreteSet &x, double delta);

enum class PorosityMode { Balls, Lines };

struct PorosityCounterexample {
    double scale = 0.0;
    std::vector<double> center;
    double angle = 0.0; ///< segment direction in lines mode
};

struct PorosityReport {
    bool porous = true;
    std::vector<double> scales;
    std::optional<PorosityCounterexample> counterexample;
};

/// Check nu-porosity at scales alpha0 * 2^i inside [alpha0, alpha1].
/// Rejections are exact violations; acceptance holds at the sampled
/// resolution of centers and directions. In d = 1 the scan is exact for
/// every sampled center.
PorosityReport porosity_check(const DiscreteSet &x, double nu, double alpha0,
                              double alpha1, PorosityMode mode);

/// Largest singular value of the DFT submatrix with rows in xm, columns in xp.
double fup_norm(const DiscreteSet &xm, const DiscreteSet &xp);

/// max |(F^H F - I)_{ij}| for the unitary DFT of size M.
double dft_unitarity_defect(std::uint32_t M);

/// exp(-1 / (1 - t^2)) on (-1, 1), zero elsewhere.
double bump(double t);

struct ScalingRun {
    std::vector<std::uint64_t> sizes;
    std::vector<double> hs;
    std::vector<double> norms;
    double fitted_slope = 0.0;
    double intercept = 0.0;
    std::optional<double> theory_slope;
};

/// Least-squares slope of log norm against log h; needs at least 4 sizes.
void fit_slope(ScalingRun &run);

/// Norm of chi(x / h^delta) chi(hD / h^delta) for M = 2^p, p in [p_min, p_max].
ScalingRun basic_uncertainty_run(unsigned d, double delta, unsigned p_min = 8,
                                 unsigned p_max = 14);

/// fup_norm of the Cantor pair at depths depth_min..depth_max.
ScalingRun fup_cantor_run(unsigned depth_min = 4, unsigned depth_max = 9);

enum class ScalingKind { Fup, Basic };

struct ScalingParams {
    unsigned d = 1;
    double delta = 0.75;
    unsigned lo = 0; ///< first exponent; 0 picks the default
    unsigned hi = 0; ///< last exponent; 0 picks the default
};

struct ScalingVerdict {
    ScalingRun run;
    bool passed = false;
    std::string criterion;
};

/// Run an experiment and judge it: basic needs |fitted - theory| <= 0.1,
/// fup needs a strictly decreasing norm and fitted slope >= 0.05.
ScalingVerdict scaling_experiment(ScalingKind kind, const ScalingParams &params);

} // namespace catmap
