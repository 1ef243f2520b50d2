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

#include "catmap/symplectic.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <regex>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "catmap/error.hpp"

namespace catmap {

IntMatrix::IntMatrix(std::size_t side) : side_(side), data_(side * side, 0) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : side_(rows.size()), data_(rows.size() * rows.size(), 0) {
    std::size_t i = 0;
    for (const auto &row : rows) {
        require(row.size() == side_, "matrix must be square");
        std::size_t j = 0;
        for (long v : row) {
            data_[i * side_ + j++] = v;
        }
        ++i;
    }
}

IntMatrix IntMatrix::identity(std::size_t side) {
    IntMatrix m(side);
    for (std::size_t i = 0; i < side; ++i) {
        m(i, i) = 1;
    }
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(side_);
    for (std::size_t i = 0; i < side_; ++i) {
        for (std::size_t j = 0; j < side_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

BigInt IntMatrix::trace() const {
    BigInt t = 0;
    for (std::size_t i = 0; i < side_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

bool IntMatrix::is_identity() const { return *this == identity(side_); }

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < side_; ++i) {
        if (i != 0) {
            os << ';';
        }
        for (std::size_t j = 0; j < side_; ++j) {
            if (j != 0) {
                os << ',';
            }
            os << (*this)(i, j).get_str();
        }
    }
    return os.str();
}

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
    require(a.side_ == b.side_, "dimension mismatch in product");
    const std::size_t n = a.side_;
    IntMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const BigInt &aik = a(i, k);
            if (sgn(aik) == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

IntMatrix operator+(const IntMatrix &a, const IntMatrix &b) {
    require(a.side_ == b.side_, "dimension mismatch in sum");
    IntMatrix c(a.side_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
        c.data_[i] = a.data_[i] + b.data_[i];
    }
    return c;
}

IntMatrix operator-(const IntMatrix &a) {
    IntMatrix c(a.side_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
        c.data_[i] = -a.data_[i];
    }
    return c;
}

bool operator==(const IntMatrix &a, const IntMatrix &b) {
    return a.side_ == b.side_ && a.data_ == b.data_;
}

std::vector<BigInt> IntMatrix::apply(std::span<const BigInt> v) const {
    require(v.size() == side_, "vector length mismatch");
    std::vector<BigInt> out(side_, 0);
    for (std::size_t i = 0; i < side_; ++i) {
        for (std::size_t j = 0; j < side_; ++j) {
            out[i] += (*this)(i, j) * v[j];
        }
    }
    return out;
}

IntMatrix parse_matrix(const std::string &text) {
    std::vector<std::vector<BigInt>> rows;
    std::stringstream rs(text);
    std::string row;
    while (std::getline(rs, row, ';')) {
        std::vector<BigInt> vals;
        std::stringstream cs(row);
        std::string cell;
        while (std::getline(cs, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t");
            const auto e = cell.find_last_not_of(" \t");
            require(b != std::string::npos, "empty matrix entry in '" + text + "'");
            const std::string tok = cell.substr(b, e - b + 1);
            require(std::regex_match(tok, std::regex("[+-]?[0-9]+")),
                    "non-integer matrix entry '" + tok + "'");
            vals.emplace_back(tok[0] == '+' ? tok.substr(1) : tok, 10);
        }
        rows.push_back(std::move(vals));
    }
    require(!rows.empty(), "empty matrix");
    IntMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require(rows[i].size() == rows.size(), "matrix must be square");
        for (std::size_t j = 0; j < rows.size(); ++j) {
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

IntMatrix symplectic_form(std::size_t n) {
    IntMatrix j(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        j(2 * i, 2 * i + 1) = -1;
        j(2 * i + 1, 2 * i) = 1;
    }
    return j;
}

BigInt sigma(std::span<const BigInt> z, std::span<const BigInt> w) {
    require(z.size() == w.size() && z.size() % 2 == 0, "sigma needs even length");
    BigInt s = 0;
    for (std::size_t i = 0; i < z.size(); i += 2) {
        s += z[i + 1] * w[i] - z[i] * w[i + 1];
    }
    return s;
}

long long sigma(std::span<const long long> z, std::span<const long long> w) {
    require(z.size() == w.size() && z.size() % 2 == 0, "sigma needs even length");
    long long s = 0;
    for (std::size_t i = 0; i < z.size(); i += 2) {
        s += z[i + 1] * w[i] - z[i] * w[i + 1];
    }
    return s;
}

bool is_symplectic(const IntMatrix &a) {
    require(a.side() % 2 == 0 && a.side() > 0,
            "symplectic test needs even dimension");
    const IntMatrix j = symplectic_form(a.side() / 2);
    return a.transpose() * j * a == j;
}

SymplecticMatrix::SymplecticMatrix(IntMatrix a) : a_(std::move(a)) {
    require(is_symplectic(a_), "matrix is not symplectic: " + a_.to_string());
}

SymplecticMatrix::SymplecticMatrix(IntMatrix a, Trusted) : a_(std::move(a)) {}

SymplecticMatrix SymplecticMatrix::inverse() const {
    const IntMatrix j = symplectic_form(n());
    return {-(j * a_.transpose() * j), Trusted{}};
}

SymplecticMatrix SymplecticMatrix::power(long long m) const {
    IntMatrix base = m < 0 ? inverse().a_ : a_;
    unsigned long long e = m < 0 ? static_cast<unsigned long long>(-(m + 1)) + 1
                                 : static_cast<unsigned long long>(m);
    IntMatrix acc = IntMatrix::identity(a_.side());
    while (e != 0) {
        if ((e & 1ULL) != 0) {
            acc = acc * base;
        }
        e >>= 1U;
        if (e != 0) {
            base = base * base;
        }
    }
    return {std::move(acc), Trusted{}};
}

SymplecticMatrix operator*(const SymplecticMatrix &a,
                           const SymplecticMatrix &b) {
    return {a.a_ * b.a_, SymplecticMatrix::Trusted{}};
}

SymplecticMatrix
SymplecticMatrix::direct_sum(const SymplecticMatrix &b) const {
    const std::size_t s1 = a_.side();
    const std::size_t s2 = b.a_.side();
    IntMatrix c(s1 + s2);
    for (std::size_t i = 0; i < s1; ++i) {
        for (std::size_t j = 0; j < s1; ++j) {
            c(i, j) = a_(i, j);
        }
    }
    for (std::size_t i = 0; i < s2; ++i) {
        for (std::size_t j = 0; j < s2; ++j) {
            c(s1 + i, s1 + j) = b.a_(i, j);
        }
    }
    return {std::move(c), Trusted{}};
}

double SymplecticMatrix::expansion_rate() const {
    require(n() == 1, "expansion rate defined for n = 1");
    const double t = std::abs(trace().get_d());
    require(t > 2.0, "matrix is not hyperbolic");
    return (t + std::sqrt(t * t - 4.0)) / 2.0;
}

bool CharPoly::is_reciprocal() const {
    const std::size_t d = degree();
    for (std::size_t i = 0; i <= d; ++i) {
        if (coeffs[i] != coeffs[d - i]) {
            return false;
        }
    }
    return true;
}

CharPoly char_poly(const IntMatrix &a) {
    const std::size_t n = a.side();
    std::vector<BigInt> c(n + 1, 0);
    c[n] = 1;
    IntMatrix m(n);
    const IntMatrix id = IntMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        IntMatrix shifted = m;
        for (std::size_t i = 0; i < n; ++i) {
            shifted(i, i) += c[n - k + 1];
        }
        m = a * shifted;
        const BigInt tr = m.trace();
        ensure(mpz_divisible_ui_p(tr.get_mpz_t(), k) != 0,
               "inexact division in characteristic polynomial");
        c[n - k] = -tr / static_cast<unsigned long>(k);
    }
    return CharPoly{std::move(c)};
}

bool is_hyperbolic(const SymplecticMatrix &a) {
    if (a.n() == 1) {
        return abs(a.trace()) > 2;
    }
    const CharPoly p = char_poly(a.matrix());
    const std::size_t d = p.degree();
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 1; i < d; ++i) {
        comp(i, i - 1) = 1.0;
    }
    for (std::size_t i = 0; i < d; ++i) {
        comp(i, d - 1) = -p.coeffs[i].get_d();
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (std::abs(std::abs(es.eigenvalues()[i]) - 1.0) < 1e-9) {
            return false;
        }
    }
    return true;
}

BigInt quadratic_q(std::span<const BigInt> w) {
    BigInt q = 0;
    for (std::size_t i = 0; i + 1 < w.size(); i += 2) {
        q += w[i] * w[i + 1];
    }
    return q;
}

namespace {

int mod2(const BigInt &v) { return mpz_odd_p(v.get_mpz_t()) != 0 ? 1 : 0; }

int phi_defect(const SymplecticMatrix &ainv, std::span<const BigInt> w) {
    const std::vector<BigInt> aw = ainv.matrix().apply(w);
    return mod2(quadratic_q(aw) - quadratic_q(w));
}

} // namespace

std::vector<int> phi_A(const SymplecticMatrix &a) {
    const std::size_t d = 2 * a.n();
    const SymplecticMatrix ainv = a.inverse();
    std::vector<int> phi(d, 0);
    // sigma(phi, e_x) = phi_xi and sigma(phi, e_xi) = -phi_x.
    for (std::size_t i = 0; i < d; i += 2) {
        std::vector<BigInt> ex(d, 0);
        std::vector<BigInt> exi(d, 0);
        ex[i] = 1;
        exi[i + 1] = 1;
        phi[i + 1] = phi_defect(ainv, ex);
        phi[i] = phi_defect(ainv, exi);
    }
    std::vector<BigInt> phib(phi.begin(), phi.end());
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        std::vector<BigInt> w(d, 0);
        for (std::size_t b = 0; b < d; ++b) {
            w[b] = static_cast<long>((mask >> b) & 1U);
        }
        ensure(phi_defect(ainv, w) == mod2(sigma(phib, w)),
               "parity congruence has no solution");
    }
    return phi;
}

bool quantization_admissible(const SymplecticMatrix &a, std::uint64_t N,
                             std::span<const Rational> theta) {
    const std::size_t d = 2 * a.n();
    require(theta.size() == d, "theta has wrong length");
    require(N > 0, "N must be positive");
    const std::vector<int> phi = phi_A(a);
    const IntMatrix &m = a.matrix();
    for (std::size_t i = 0; i < d; ++i) {
        Rational lhs = theta[i];
        for (std::size_t j = 0; j < d; ++j) {
            lhs -= Rational(m(i, j)) * theta[j];
        }
        Rational rhs(BigInt(static_cast<unsigned long>(N)) * phi[i], 2);
        rhs.canonicalize();
        Rational diff = lhs - rhs;
        diff.canonicalize();
        if (diff.get_den() != 1) {
            return false;
        }
    }
    return true;
}

Rational parse_rational(const std::string &text) {
    static const std::regex frac("\\s*([+-]?[0-9]+)\\s*/\\s*([0-9]+)\\s*");
    static const std::regex dec("\\s*([+-]?)([0-9]*)(?:\\.([0-9]*))?\\s*");
    std::smatch m;
    if (std::regex_match(text, m, frac)) {
        std::string num = m[1].str();
        if (num[0] == '+') {
            num = num.substr(1);
        }
        BigInt den(m[2].str(), 10);
        require(den != 0, "zero denominator");
        Rational r(BigInt(num, 10), den);
        r.canonicalize();
        return r;
    }
    if (std::regex_match(text, m, dec) &&
        (m[2].length() > 0 || m[3].length() > 0)) {
        const std::string whole = m[2].length() > 0 ? m[2].str() : "0";
        const std::string frac_part = m[3].str();
        BigInt num(whole + frac_part, 10);
        BigInt den = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) {
            den *= 10;
        }
        if (m[1].str() == "-") {
            num = -num;
        }
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    throw UnsupportedInput("only rational values are supported: '" + text +
                           "'");
}

std::uint64_t to_u64(const BigInt &v, const char *what) {
    require(sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64,
            std::string(what) + " does not fit in 64 bits");
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
}

namespace {

using u128 = unsigned __int128;

std::vector<std::uint64_t> reduce_mod(const IntMatrix &a, std::uint64_t mod) {
    std::vector<std::uint64_t> out(a.side() * a.side());
    const BigInt bm(std::to_string(mod), 10);
    for (std::size_t i = 0; i < a.side(); ++i) {
        for (std::size_t j = 0; j < a.side(); ++j) {
            BigInt r = a(i, j) % bm;
            if (sgn(r) < 0) {
                r += bm;
            }
            out[i * a.side() + j] = to_u64(r, "residue");
        }
    }
    return out;
}

std::vector<std::uint64_t> mul_mod(const std::vector<std::uint64_t> &x,
                                   const std::vector<std::uint64_t> &y,
                                   std::size_t n, std::uint64_t mod) {
    std::vector<std::uint64_t> z(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            u128 acc = 0;
            for (std::size_t k = 0; k < n; ++k) {
                acc += static_cast<u128>(x[i * n + k]) * y[k * n + j];
                acc %= mod;
            }
            z[i * n + j] = static_cast<std::uint64_t>(acc);
        }
    }
    return z;
}

} // namespace

namespace {

// A^k = I + N C with cur = A^k mod 2N. For even N the translation lift picks
// up the sign (-1)^{j^T S C j}, S swapping each (x, xi) pair, so M^k is a
// scalar exactly when that quadratic form vanishes mod 2.
bool scalar_power(const std::vector<std::uint64_t> &cur, std::size_t s, std::uint64_t N) {
    std::vector<std::uint8_t> c(s * s, 0);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            const std::uint64_t mod = 2 * N;
            const std::uint64_t diff = (cur[i * s + j] + mod - (i == j ? 1 % mod : 0)) % mod;
            if (diff % N != 0) {
                return false;
            }
            c[i * s + j] = static_cast<std::uint8_t>(diff / N);
        }
    }
    if (N % 2 != 0) {
        return true;
    }
    auto m = [&](std::size_t i, std::size_t j) { return c[(i ^ 1U) * s + j]; };
    for (std::size_t i = 0; i < s; ++i) {
        if (m(i, i) != 0) {
            return false;
        }
        for (std::size_t j = i + 1; j < s; ++j) {
            if (((m(i, j) + m(j, i)) & 1U) != 0) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

std::uint64_t quantum_period(const SymplecticMatrix &a, std::uint64_t N,
                             PeriodOptions opts) {
    require(N > 0, "N must be positive");
    require(N <= (std::numeric_limits<std::uint64_t>::max() >> 2U),
            "N too large");
    if (opts.require_hyperbolic) {
        require(is_hyperbolic(a), "quantum period requires a hyperbolic matrix");
    }
    const std::uint64_t mod = 2 * N;
    const std::size_t s = a.matrix().side();
    const std::vector<std::uint64_t> base = reduce_mod(a.matrix(), mod);
    std::vector<std::uint64_t> cur = base;
    const std::uint64_t cap = opts.cap_factor * N;
    for (std::uint64_t k = 1; k <= cap; ++k) {
        if (scalar_power(cur, s, N)) {
            return k;
        }
        cur = mul_mod(cur, base, s, mod);
    }
    throw InvariantError("period not found within " + std::to_string(cap) +
                         " iterations");
}

AdmissibleN admissible_N(const SymplecticMatrix &a, unsigned k) {
    require(a.n() == 1, "admissible_N needs a 2x2 matrix");
    const BigInt tr = a.trace();
    require(tr > 2, "admissible_N needs Tr(A) > 2");
    require(k >= 1, "k must be positive");
    BigInt prev = 0;
    BigInt cur = 1;
    for (unsigned i = 1; i < k; ++i) {
        BigInt next = tr * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }

    const long double t = tr.get_d();
    const long double lam = (t + std::sqrt(t * t - 4.0L)) / 2.0L;
    const long double log_val =
        static_cast<long double>(k) * std::log(lam) - std::log(lam - 1.0L / lam);
    if (log_val < 700.0L) {
        const long double fl =
            (std::pow(lam, static_cast<long double>(k)) -
             std::pow(lam, -static_cast<long double>(k))) /
            (lam - 1.0L / lam);
        const long double exact = cur.get_d();
        if (fl < 4.0e15L) {
            ensure(std::llround(fl) == std::llround(exact),
                   "recurrence disagrees with closed form for N_k");
        } else {
            ensure(std::abs(fl - exact) <= 1e-10L * exact,
                   "recurrence disagrees with closed form for N_k");
        }
    }

    AdmissibleN out;
    out.N = cur;
    out.even = mpz_even_p(cur.get_mpz_t()) != 0;
    const bool tr_odd = mpz_odd_p(tr.get_mpz_t()) != 0;
    out.admissible = tr_odd ? (k % 6 == 0) : (k % 2 == 0);
    return out;
}

} // namespace catmap
