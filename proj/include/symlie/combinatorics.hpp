// Copyright 2026 The symlie Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "symlie/errors.hpp"
#include "symlie/group_spec.hpp"

namespace symlie {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Cycle type of a permutation: cycle lengths sorted non-increasing.
using CycleType = std::vector<int>;

/// Cycle index polynomial Z[G] in the variables a_1..a_N.
///
/// Each term is keyed by a cycle type; the monomial is prod_l a_l for l in the
/// cycle type. Coefficients are exact rationals and sum to 1.
class CycleIndex {
  public:
    CycleIndex() = default;
    explicit CycleIndex(int degree) : degree_(degree) {}

    int degree() const noexcept { return degree_; }
    const std::map<CycleType, Rational> &terms() const noexcept { return terms_; }

    void add_term(CycleType type, const Rational &coeff) {
        std::sort(type.begin(), type.end(), std::greater<>());
        auto &c = terms_[type];
        c += coeff;
        if (c == 0) terms_.erase(type);
    }

    CycleIndex &operator+=(const CycleIndex &other) {
        for (const auto &[t, c] : other.terms_) add_term(t, c);
        return *this;
    }

    CycleIndex scaled(const Rational &s) const {
        CycleIndex out(degree_);
        for (const auto &[t, c] : terms_) out.add_term(t, c * s);
        return out;
    }

    Rational coefficient_sum() const {
        Rational s = 0;
        for (const auto &[t, c] : terms_) s += c;
        return s;
    }

    /// Renders e.g. `1/4 a1^4 + 1/4 a2^2 + 1/2 a4`, terms in descending cycle-type order.
    std::string str() const {
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            out += it->second.str();
            std::map<int, int> powers;
            for (int l : it->first) ++powers[l];
            for (const auto &[l, e] : powers) {
                out += " a" + std::to_string(l);
                if (e > 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

  private:
    int degree_ = 0;
    std::map<CycleType, Rational> terms_;
};

inline std::int64_t euler_totient(std::int64_t d) {
    if (d < 1) throw PreconditionViolation("euler_totient needs d >= 1");
    std::int64_t result = d;
    std::int64_t m = d;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Number of elements of the group, with the D_1/D_2 conventions of GroupSpec.
inline BigInt group_order(const GroupSpec &g) {
    const int n = g.size;
    switch (g.family) {
    case Family::Symmetric: return factorial(n);
    case Family::Alternating: return n < 2 ? BigInt(1) : factorial(n) / 2;
    case Family::Dihedral: return n < 3 ? BigInt(n) : BigInt(2 * n);
    case Family::Cyclic: return n;
    case Family::Trivial: return 1;
    }
    return 1;
}

inline BigInt group_order(const ProductGroupSpec &g) {
    BigInt r = 1;
    for (const auto &p : g.parts()) r *= group_order(p);
    return r;
}

namespace detail {

inline CycleType repeated(int length, int count) { return CycleType(static_cast<size_t>(count), length); }

inline CycleIndex cyclic_index(int n) {
    CycleIndex z(n);
    for (int d = 1; d <= n; ++d) {
        if (n % d == 0) z.add_term(repeated(d, n / d), Rational(euler_totient(d), n));
    }
    return z;
}

/// Z[S_0..S_n] by Z[S_m] = (1/m) sum_{l=1..m} a_l Z[S_{m-l}].
inline std::vector<CycleIndex> symmetric_indices(int n) {
    std::vector<CycleIndex> z;
    z.reserve(static_cast<size_t>(n) + 1);
    z.emplace_back(0);
    z[0].add_term({}, Rational(1));
    for (int m = 1; m <= n; ++m) {
        CycleIndex cur(m);
        for (int l = 1; l <= m; ++l) {
            for (const auto &[t, c] : z[static_cast<size_t>(m - l)].terms()) {
                CycleType nt = t;
                nt.push_back(l);
                cur.add_term(std::move(nt), c / m);
            }
        }
        z.push_back(std::move(cur));
    }
    return z;
}

/// Permutation sign of a cycle type: prod (-1)^(l-1).
inline int cycle_type_sign(const CycleType &t) {
    int parity = 0;
    for (int l : t) parity += l - 1;
    return parity % 2 == 0 ? 1 : -1;
}

}  // namespace detail

/// Cycle index of one of the five named families.
inline CycleIndex cycle_index(const GroupSpec &spec) {
    const int n = spec.size;
    switch (spec.family) {
    case Family::Trivial: {
        CycleIndex z(n);
        z.add_term(detail::repeated(1, n), Rational(1));
        return z;
    }
    case Family::Cyclic: return detail::cyclic_index(n);
    case Family::Symmetric: return detail::symmetric_indices(n).back();
    case Family::Alternating: {
        CycleIndex s = detail::symmetric_indices(n).back();
        if (n < 2) return s;  // A_1 = S_1; the sign substitution below assumes index 2.
        // Z[S_N](a_i) + Z[S_N]((-1)^(i-1) a_i): odd classes cancel, even ones double.
        CycleIndex z(n);
        for (const auto &[t, c] : s.terms()) z.add_term(t, c * (1 + detail::cycle_type_sign(t)));
        return z;
    }
    case Family::Dihedral: {
        CycleIndex z = detail::cyclic_index(n).scaled(Rational(1, 2));
        if (n % 2 == 0) {
            CycleType t1 = detail::repeated(2, (n - 2) / 2);
            t1.push_back(1);
            t1.push_back(1);
            z.add_term(std::move(t1), Rational(1, 4));
            z.add_term(detail::repeated(2, n / 2), Rational(1, 4));
        } else {
            CycleType t = detail::repeated(2, (n - 1) / 2);
            t.push_back(1);
            z.add_term(std::move(t), Rational(1, 2));
        }
        return z;
    }
    }
    return CycleIndex(n);
}

/// Z[G](k, k, ..., k): the number of G-orbits on words of length N over k letters.
/// Throws NonIntegralEvaluation if the exact result is not an integer.
inline BigInt evaluate(const CycleIndex &ci, int k) {
    if (k < 1) throw PreconditionViolation("evaluate needs alphabet size k >= 1");
    Rational total = 0;
    for (const auto &[t, c] : ci.terms()) {
        const BigInt power = boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(t.size()));
        total += c * Rational(power);
    }
    if (denominator(total) != 1) {
        throw NonIntegralEvaluation("cycle index evaluated at " + std::to_string(k) + " gives non-integer " + total.str());
    }
    return numerator(total);
}

/// Real dimension of the G-invariant subalgebra of su(2^N); `alphabet` generalizes 4.
inline BigInt dim_invariant_algebra(const GroupSpec &spec, int alphabet = 4) {
    return evaluate(cycle_index(spec), alphabet) - 1;
}

/// prod_i Z[G_i](4..4) - 1; the identity string is removed once for the whole product.
inline BigInt dim_product(const ProductGroupSpec &spec, int alphabet = 4) {
    BigInt prod = 1;
    for (const auto &p : spec.parts()) prod *= evaluate(cycle_index(p), alphabet);
    return prod - 1;
}

/// C(N+3, N) - 1.
inline BigInt dim_symmetric_closed_form(int n) {
    if (n < 1) throw PreconditionViolation("N must be >= 1");
    return binomial(n + 3, n) - 1;
}

/// C(2N, N) - 1.
inline BigInt dim_energy_preserving(int n) {
    if (n < 1) throw PreconditionViolation("N must be >= 1");
    return binomial(2 * n, n) - 1;
}

}  // namespace symlie
