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
 * Integer symplectic matrices and their arithmetic invariants.
 *
 * Coordinates are interleaved as (x1, xi1, x2, xi2, ...), so the standard
 * form is J = diag([[0,-1],[1,0]], ...) and sigma(z, w) = z^T J w.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace catmap {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Square matrix of arbitrary-precision integers, row-major.
class IntMatrix {
  public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t side);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t side);

    [[nodiscard]] std::size_t side() const { return side_; }
    BigInt &operator()(std::size_t i, std::size_t j) {
        return data_[i * side_ + j];
    }
    const BigInt &operator()(std::size_t i, std::size_t j) const {
        return data_[i * side_ + j];
    }

    [[nodiscard]] IntMatrix transpose() const;
    [[nodiscard]] BigInt trace() const;
    [[nodiscard]] bool is_identity() const;
    [[nodiscard]] std::string to_string() const;

    friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
    friend IntMatrix operator+(const IntMatrix &a, const IntMatrix &b);
    friend IntMatrix operator-(const IntMatrix &a);
    friend bool operator==(const IntMatrix &a, const IntMatrix &b);

    /// Apply to an integer column vector.
    [[nodiscard]] std::vector<BigInt> apply(std::span<const BigInt> v) const;

  private:
    std::size_t side_ = 0;
    std::vector<BigInt> data_;
};

/// Parse "a,b;c,d" (rows separated by ';').
IntMatrix parse_matrix(const std::string &text);

/// The standard form J for n degrees of freedom (interleaved ordering).
IntMatrix symplectic_form(std::size_t n);

/// sigma(z, w) = z^T J w.
BigInt sigma(std::span<const BigInt> z, std::span<const BigInt> w);
long long sigma(std::span<const long long> z, std::span<const long long> w);

/// A^T J A == J exactly. Throws PreconditionError on odd dimension.
bool is_symplectic(const IntMatrix &a);

/// A validated element of Sp(2n, Z).
class SymplecticMatrix {
  public:
    /// Throws PreconditionError unless a is symplectic.
    explicit SymplecticMatrix(IntMatrix a);

    [[nodiscard]] const IntMatrix &matrix() const { return a_; }
    [[nodiscard]] std::size_t n() const { return a_.side() / 2; }
    [[nodiscard]] BigInt trace() const { return a_.trace(); }

    /// A^{-1} = -J A^T J.
    [[nodiscard]] SymplecticMatrix inverse() const;
    /// A^m for any integer m.
    [[nodiscard]] SymplecticMatrix power(long long m) const;

    friend SymplecticMatrix operator*(const SymplecticMatrix &a,
                                      const SymplecticMatrix &b);
    friend bool operator==(const SymplecticMatrix &a,
                           const SymplecticMatrix &b) {
        return a.a_ == b.a_;
    }

    /// Block-diagonal sum, acting on the concatenated degrees of freedom.
    [[nodiscard]] SymplecticMatrix direct_sum(const SymplecticMatrix &b) const;

    /// Leading eigenvalue modulus for n = 1 (lambda > 1 when hyperbolic).
    [[nodiscard]] double expansion_rate() const;

  private:
    struct Trusted {};
    SymplecticMatrix(IntMatrix a, Trusted);
    IntMatrix a_;
};

/// Monic characteristic polynomial, coefficients low to high.
struct CharPoly {
    std::vector<BigInt> coeffs;
    [[nodiscard]] std::size_t degree() const { return coeffs.size() - 1; }
    [[nodiscard]] bool is_reciprocal() const;
};

/// det(x I - A) by Faddeev-LeVerrier in exact integer arithmetic.
CharPoly char_poly(const IntMatrix &a);

/// No eigenvalue on the unit circle (exact trace test for n = 1).
bool is_hyperbolic(const SymplecticMatrix &a);

/// The parity vector phi_A in {0,1}^{2n}.
std::vector<int> phi_A(const SymplecticMatrix &a);

/// Q(w) = sum_i x_i xi_i over the interleaved pairs.
BigInt quadratic_q(std::span<const BigInt> w);

/// Exact check of (I - A) theta = N phi_A / 2 mod Z^{2n}.
bool quantization_admissible(const SymplecticMatrix &a, std::uint64_t N,
                             std::span<const Rational> theta);

/// Parse "p/q" or a terminating decimal; anything else is unsupported.
Rational parse_rational(const std::string &text);

struct PeriodOptions {
    std::uint64_t cap_factor = 16;
    bool require_hyperbolic = true;
};

/// Least k >= 1 with M_A^k a scalar on H_N(0): A^k = I + N C where, for even
/// N, the form j -> sum_i (p_i (Cj)_{q_i} + q_i (Cj)_{p_i}) vanishes mod 2.
/// For odd N only A^k = I mod N is tested.
std::uint64_t quantum_period(const SymplecticMatrix &a, std::uint64_t N,
                             PeriodOptions opts = {});

struct AdmissibleN {
    BigInt N;
    bool even = false;
    bool admissible = false;
};

/// N_k = (lambda^k - lambda^-k) / (lambda - lambda^-1) for A in SL(2, Z).
AdmissibleN admissible_N(const SymplecticMatrix &a, unsigned k);

/// Convert to uint64, throwing PreconditionError when out of range.
std::uint64_t to_u64(const BigInt &v, const char *what);

} // namespace catmap
