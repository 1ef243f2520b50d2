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
#include <sstream>

#include "catmap/error.hpp"
#include "catmap/galois.hpp"

namespace catmap {

namespace {

std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t powmod_u(std::uint32_t base, std::uint64_t e, std::uint32_t p) {
    std::uint32_t r = 1 % p;
    while (e != 0) {
        if ((e & 1U) != 0) {
            r = mulmod(r, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1U;
    }
    return r;
}

std::uint32_t inverse(std::uint32_t a, std::uint32_t p) {
    require(a % p != 0, "zero has no inverse");
    return powmod_u(a, p - 2, p);
}

} // namespace

bool is_prime(std::uint64_t v) {
    if (v < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            return false;
        }
    }
    return true;
}

PolyModP::PolyModP(std::uint32_t ell, std::vector<std::uint32_t> coeffs)
    : ell_(ell), c_(std::move(coeffs)) {
    require(ell >= 2 && ell < (1U << 31U), "modulus out of range");
    for (auto &c : c_) {
        c %= ell_;
    }
    trim();
}

PolyModP PolyModP::from_integer(std::uint32_t ell,
                                const std::vector<BigInt> &coeffs) {
    std::vector<std::uint32_t> c;
    c.reserve(coeffs.size());
    for (const auto &v : coeffs) {
        BigInt r = v % ell;
        if (sgn(r) < 0) {
            r += ell;
        }
        c.push_back(static_cast<std::uint32_t>(r.get_ui()));
    }
    return {ell, std::move(c)};
}

PolyModP PolyModP::x(std::uint32_t ell) { return {ell, {0, 1}}; }

void PolyModP::trim() {
    while (!c_.empty() && c_.back() == 0) {
        c_.pop_back();
    }
}

PolyModP PolyModP::derivative() const {
    std::vector<std::uint32_t> d;
    for (std::size_t i = 1; i < c_.size(); ++i) {
        d.push_back(mulmod(c_[i], static_cast<std::uint32_t>(i % ell_), ell_));
    }
    return {ell_, std::move(d)};
}

PolyModP PolyModP::monic() const {
    if (c_.empty()) {
        return *this;
    }
    const std::uint32_t inv = inverse(c_.back(), ell_);
    std::vector<std::uint32_t> m(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        m[i] = mulmod(c_[i], inv, ell_);
    }
    return {ell_, std::move(m)};
}

PolyModP operator+(const PolyModP &a, const PolyModP &b) {
    require(a.ell_ == b.ell_, "moduli differ");
    std::vector<std::uint32_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::uint64_t x = (i < a.c_.size() ? a.c_[i] : 0U);
        const std::uint64_t y = (i < b.c_.size() ? b.c_[i] : 0U);
        c[i] = static_cast<std::uint32_t>((x + y) % a.ell_);
    }
    return {a.ell_, std::move(c)};
}

PolyModP operator-(const PolyModP &a, const PolyModP &b) {
    require(a.ell_ == b.ell_, "moduli differ");
    std::vector<std::uint32_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::uint64_t x = (i < a.c_.size() ? a.c_[i] : 0U);
        const std::uint64_t y = (i < b.c_.size() ? b.c_[i] : 0U);
        c[i] = static_cast<std::uint32_t>((x + a.ell_ - y) % a.ell_);
    }
    return {a.ell_, std::move(c)};
}

PolyModP operator*(const PolyModP &a, const PolyModP &b) {
    require(a.ell_ == b.ell_, "moduli differ");
    if (a.c_.empty() || b.c_.empty()) {
        return {a.ell_, {}};
    }
    std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a.c_[i]) * b.c_[j]) %
                         a.ell_;
        }
    }
    return {a.ell_, std::vector<std::uint32_t>(acc.begin(), acc.end())};
}

std::pair<PolyModP, PolyModP> PolyModP::divmod(const PolyModP &d) const {
    require(d.ell_ == ell_, "moduli differ");
    require(!d.c_.empty(), "division by zero polynomial");
    std::vector<std::uint32_t> r = c_;
    const std::size_t dd = d.c_.size() - 1;
    if (r.size() < d.c_.size()) {
        return {PolyModP(ell_, {}), *this};
    }
    std::vector<std::uint32_t> q(r.size() - dd, 0);
    const std::uint32_t inv = inverse(d.c_.back(), ell_);
    for (std::size_t i = r.size(); i-- > dd;) {
        const std::uint32_t coef = mulmod(r[i], inv, ell_);
        q[i - dd] = coef;
        if (coef == 0) {
            continue;
        }
        for (std::size_t j = 0; j <= dd; ++j) {
            const std::uint32_t sub = mulmod(coef, d.c_[j], ell_);
            r[i - dd + j] = (r[i - dd + j] + ell_ - sub) % ell_;
        }
    }
    r.resize(dd);
    return {PolyModP(ell_, std::move(q)), PolyModP(ell_, std::move(r))};
}

PolyModP PolyModP::powmod(std::uint64_t e, const PolyModP &m) const {
    PolyModP result(ell_, {1});
    result = result.mod(m);
    PolyModP base = mod(m);
    while (e != 0) {
        if ((e & 1U) != 0) {
            result = (result * base).mod(m);
        }
        base = (base * base).mod(m);
        e >>= 1U;
    }
    return result;
}

PolyModP gcd(PolyModP a, PolyModP b) {
    while (!b.is_zero()) {
        PolyModP r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::string CycleType::label() const {
    if (!squarefree) {
        return "nonsquarefree";
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        os << (i == 0 ? "" : "+") << degrees[i];
    }
    return os.str();
}

unsigned CycleType::even_cycle_class() const {
    if (!squarefree || degrees.empty()) {
        return 0;
    }
    unsigned big = 0;
    for (unsigned d : degrees) {
        if (d == 1) {
            continue;
        }
        if (big != 0) {
            return 0;
        }
        big = d;
    }
    return big % 2 == 0 ? big : 0;
}

CycleType factor_type(const PolyModP &f) {
    require(f.is_monic() && f.degree() >= 1, "factor_type needs a monic polynomial");
    const std::uint32_t ell = f.ell();
    CycleType ct;
    const PolyModP df = f.derivative();
    ct.squarefree = !df.is_zero() && gcd(f, df).degree() == 0;

    PolyModP g = f;
    const PolyModP x = PolyModP::x(ell);
    PolyModP h = x.mod(g);
    for (int d = 1; 2 * d <= g.degree(); ++d) {
        h = h.powmod(ell, g);
        const PolyModP common = gcd(g, h - x);
        if (common.degree() > 0) {
            for (int i = 0; i < common.degree() / d; ++i) {
                ct.degrees.push_back(static_cast<unsigned>(d));
            }
            g = g.divmod(common).first;
            h = h.mod(g);
        }
    }
    if (g.degree() > 0) {
        ct.degrees.push_back(static_cast<unsigned>(g.degree()));
    }
    std::sort(ct.degrees.begin(), ct.degrees.end());
    return ct;
}

} // namespace catmap
