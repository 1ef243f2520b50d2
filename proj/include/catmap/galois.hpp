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
 * Factorization patterns of reciprocal polynomials over finite fields,
 * Frobenius-witness certification of the hyperoctahedral Galois group,
 * and random symplectic words.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catmap/symplectic.hpp"

namespace catmap {

/// Polynomial over F_ell, coefficients low to high, no trailing zeros.
class PolyModP {
  public:
    PolyModP(std::uint32_t ell, std::vector<std::uint32_t> coeffs);
    /// Reduce an integer polynomial (low to high) modulo ell.
    static PolyModP from_integer(std::uint32_t ell, const std::vector<BigInt> &coeffs);
    static PolyModP x(std::uint32_t ell);

    [[nodiscard]] std::uint32_t ell() const { return ell_; }
    [[nodiscard]] const std::vector<std::uint32_t> &coeffs() const { return c_; }
    /// Degree; -1 for the zero polynomial.
    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    [[nodiscard]] PolyModP derivative() const;
    [[nodiscard]] PolyModP monic() const;

    friend PolyModP operator+(const PolyModP &a, const PolyModP &b);
    friend PolyModP operator-(const PolyModP &a, const PolyModP &b);
    friend PolyModP operator*(const PolyModP &a, const PolyModP &b);
    friend bool operator==(const PolyModP &a, const PolyModP &b) = default;

    /// Quotient and remainder; divisor must be nonzero.
    [[nodiscard]] std::pair<PolyModP, PolyModP> divmod(const PolyModP &d) const;
    [[nodiscard]] PolyModP mod(const PolyModP &d) const { return divmod(d).second; }
    /// this^e mod m.
    [[nodiscard]] PolyModP powmod(std::uint64_t e, const PolyModP &m) const;

  private:
    void trim();
    std::uint32_t ell_;
    std::vector<std::uint32_t> c_;
};

PolyModP gcd(PolyModP a, PolyModP b);

bool is_prime(std::uint64_t v);

struct CycleType {
    std::vector<unsigned> degrees; ///< sorted ascending
    bool squarefree = false;
    [[nodiscard]] std::string label() const;
    /// 2k when the pattern is one irreducible factor of degree 2k times
    /// distinct linear factors; 0 otherwise.
    [[nodiscard]] unsigned even_cycle_class() const;
};

/// Distinct-degree factorization pattern of a monic polynomial.
CycleType factor_type(const PolyModP &f);

struct CensusClass {
    unsigned k = 0;
    std::uint64_t count = 0;
    double main_term = 0.0;
    [[nodiscard]] double abs_error() const {
        return std::abs(static_cast<double>(count) - main_term);
    }
};

struct CensusResult {
    std::uint32_t ell = 0;
    unsigned n = 0;
    std::uint64_t total = 0;
    std::map<std::string, std::uint64_t> by_type; ///< "nonsquarefree" or degree label
    std::vector<CensusClass> classes;             ///< k = 1..n
};

/// Enumerate all monic reciprocal polynomials of degree 2n over F_ell.
CensusResult reciprocal_census(std::uint32_t ell, unsigned n);

/// ell^n / (2^{n-k+1} k (n-k)!).
double census_main_term(std::uint32_t ell, unsigned n, unsigned k);

using IntPoly = std::vector<BigInt>; ///< low to high

enum class Verdict { CertifiedWreath, CertifiedIrreducibleOnly, Undetermined, Contradicted };
std::string to_string(Verdict v);

struct Witness {
    std::uint32_t ell = 0;
    CycleType type;
};

struct Factorization {
    std::vector<std::pair<IntPoly, unsigned>> factors; ///< monic, with multiplicity
    [[nodiscard]] IntPoly product() const;
    [[nodiscard]] bool nontrivial() const;
};

struct GaloisCertificate {
    std::vector<std::uint32_t> primes_scanned;
    std::vector<std::uint32_t> primes_skipped; ///< non-squarefree reductions
    std::map<unsigned, Witness> witnesses;     ///< keyed by cycle length
    std::vector<unsigned> required;
    Verdict verdict = Verdict::Undetermined;
    std::optional<Factorization> factorization;
};

/// The set of cycle lengths whose witnesses certify the wreath product.
std::vector<unsigned> required_cycle_classes(unsigned n);

GaloisCertificate certify_wreath(const IntPoly &f, std::uint32_t prime_bound);

/// Search for a factorization over Z guided by numerical roots; every
/// candidate factor is bounded by the Landau-Mignotte bound and confirmed by
/// exact division. Returns nullopt when no proper factor is found.
std::optional<Factorization> find_integer_factorization(const IntPoly &f);

IntPoly poly_mul(const IntPoly &a, const IntPoly &b);
/// Exact division by a monic divisor; nullopt if the remainder is nonzero.
std::optional<IntPoly> poly_div_exact(const IntPoly &a, const IntPoly &b);
std::string poly_to_string(const IntPoly &p);
/// Parse coefficients highest degree first, e.g. "1,-3,1".
IntPoly parse_poly(const std::string &text);

enum class PowerStatus { Irreducible, Reducible, Undetermined };
std::string to_string(PowerStatus s);

struct PowerVerdict {
    unsigned m = 0;
    IntPoly poly;
    PowerStatus status = PowerStatus::Undetermined;
    std::uint32_t witness_prime = 0;
    std::optional<Factorization> factorization;
};

struct PowerScan {
    std::vector<PowerVerdict> powers;
    std::optional<unsigned> k0; ///< least m with certified reducibility
};

PowerScan power_scan(const SymplecticMatrix &a, unsigned m_max,
                     std::uint32_t prime_bound);

/// counts[t] = #{A in SL(2, F_ell) : Tr A = t}.
std::vector<std::uint64_t> sl2_census(std::uint32_t ell);

/// The generator set used by sample_sp (inverses are added on the fly).
std::vector<SymplecticMatrix> sp_generators(unsigned n);

/// Non-backtracking random words of the given length in sp_generators(n)
/// and their inverses; mt19937_64 seeded with seed.
std::vector<SymplecticMatrix> sample_sp(unsigned n, unsigned word_length,
                                        unsigned count, std::uint64_t seed);

} // namespace catmap
