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
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "symlie/dense.hpp"
#include "symlie/errors.hpp"
#include "symlie/group_spec.hpp"
#include "symlie/permutation.hpp"

namespace symlie {

/// Word over {0,1,2,3} naming sigma_{d_1} x ... x sigma_{d_N}. Digit 0 is the
/// identity; 1, 2, 3 are sigma_x, sigma_y, sigma_z. The external encoding is the
/// digit string, e.g. "0312".
class PauliString {
  public:
    PauliString() = default;

    explicit PauliString(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
        if (digits_.empty()) throw InvalidSpec("Pauli string must have length >= 1");
        for (auto d : digits_)
            if (d > 3) throw InvalidSpec("Pauli digit out of range: " + std::to_string(d));
    }

    static PauliString parse(std::string_view text) {
        std::vector<std::uint8_t> d;
        d.reserve(text.size());
        for (char c : text) {
            if (c < '0' || c > '3') throw InvalidSpec("bad Pauli digit '" + std::string(1, c) + "' in '" + std::string(text) + "'");
            d.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        return PauliString(std::move(d));
    }

    int size() const noexcept { return static_cast<int>(digits_.size()); }
    std::uint8_t operator[](int j) const { return digits_[static_cast<size_t>(j)]; }
    const std::vector<std::uint8_t> &digits() const noexcept { return digits_; }

    bool is_identity() const {
        for (auto d : digits_)
            if (d) return false;
        return true;
    }

    std::string str() const {
        std::string s;
        for (auto d : digits_) s += static_cast<char>('0' + d);
        return s;
    }

    friend bool operator==(const PauliString &, const PauliString &) = default;
    friend auto operator<=>(const PauliString &, const PauliString &) = default;

  private:
    std::vector<std::uint8_t> digits_;
};

inline PauliString apply_to_tuple(const Permutation &p, const PauliString &s) {
    return PauliString(apply_to_tuple(p, s.digits()));
}

/// The 2x2 matrix sigma_mu, mu in {0,1,2,3}.
inline Eigen::Matrix2cd sigma(int mu) {
    const Complex i(0.0, 1.0);
    Eigen::Matrix2cd m;
    switch (mu) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw InvalidSpec("Pauli index out of range");
    }
    return m;
}

/// Kronecker product of two dense matrices (lhs is the more significant factor).
inline DenseOperator kron(const DenseOperator &a, const DenseOperator &b) {
    DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

/// sigma_{d_1} x ... x sigma_{d_N} as a 2^N x 2^N Hermitian matrix (no factor i).
inline DenseOperator pauli_matrix(const PauliString &s, int max_qubits = kDefaultMaxDenseQubits) {
    check_dense_cap(s.size(), max_qubits);
    DenseOperator out = sigma(s[0]);
    for (int j = 1; j < s.size(); ++j) out = kron(out, sigma(s[j]));
    return out;
}

/// One G-necklace of Pauli strings: all members share one coordinate.
struct OrbitBasisElement {
    PauliString representative;
    std::vector<PauliString> members;

    std::size_t weight() const noexcept { return members.size(); }
};

inline void to_json(nlohmann::json &j, const OrbitBasisElement &e) {
    std::vector<std::string> members;
    members.reserve(e.members.size());
    for (const auto &m : e.members) members.push_back(m.str());
    j = nlohmann::json{{"representative", e.representative.str()}, {"weight", e.weight()}, {"members", members}};
}

/// Invariant basis of the G-invariant subalgebra: one element per orbit of
/// {0..3}^N minus the identity string, in lexicographic order of representatives.
inline std::vector<OrbitBasisElement> enumerate_invariant_basis(const ProductGroupSpec &spec,
                                                                std::uint64_t space_cap = kDefaultStateSpaceCap) {
    std::vector<OrbitBasisElement> basis;
    scan_orbits(spec, 4, space_cap, [&](const WordSpace &space, const std::vector<std::uint64_t> &members) {
        if (members.front() == 0) return;  // the identity string is its own orbit
        OrbitBasisElement e;
        e.members.reserve(members.size());
        for (auto idx : members) e.members.emplace_back(space.word(idx));
        e.representative = e.members.front();
        basis.push_back(std::move(e));
    });
    return basis;
}

/// Number of invariant basis elements without materializing member lists.
inline std::uint64_t count_invariant_basis(const ProductGroupSpec &spec, std::uint64_t space_cap = kDefaultStateSpaceCap) {
    return count_orbits_bruteforce(spec, 4, space_cap) - 1;
}

/// i * sum of the member Pauli matrices. Skew-Hermitian and traceless.
inline DenseOperator symmetrized_generator(const OrbitBasisElement &e, int max_qubits = kDefaultMaxDenseQubits) {
    if (e.members.empty()) throw PreconditionViolation("empty orbit");
    DenseOperator sum = pauli_matrix(e.members.front(), max_qubits);
    for (size_t m = 1; m < e.members.size(); ++m) sum += pauli_matrix(e.members[m], max_qubits);
    return Complex(0.0, 1.0) * sum;
}

}  // namespace symlie
