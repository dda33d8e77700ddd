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

// Helpers shared by the unit and acceptance tests.

#include <cstdint>
#include <vector>

#include "symlie/dense.hpp"
#include "symlie/errors.hpp"

namespace testing_support {

/// U A U^dagger for a 0/1 permutation matrix U, read off the dense matrix:
/// if U|c> = |m(c)> then (U A U^dagger)(m(r), m(c)) = A(r, c).
inline symlie::DenseOperator conjugate_by_permutation(const symlie::DenseOperator &u, const symlie::DenseOperator &a) {
    const auto d = u.rows();
    std::vector<Eigen::Index> m(static_cast<std::size_t>(d), -1);
    for (Eigen::Index c = 0; c < d; ++c)
        for (Eigen::Index r = 0; r < d; ++r)
            if (u(r, c) != symlie::Complex(0.0)) {
                if (u(r, c) != symlie::Complex(1.0) || m[static_cast<std::size_t>(c)] != -1)
                    throw symlie::PreconditionViolation("not a permutation matrix");
                m[static_cast<std::size_t>(c)] = r;
            }
    symlie::DenseOperator out(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) out(m[static_cast<std::size_t>(r)], m[static_cast<std::size_t>(c)]) = a(r, c);
    return out;
}

/// Real coefficients x_s with A = sum_s x_s * i * P_s (A skew-Hermitian), index s lexicographic.
template <typename PauliMats>
std::vector<double> pauli_coefficients(const symlie::DenseOperator &a, const PauliMats &paulis) {
    std::vector<double> x;
    const double scale = 1.0 / static_cast<double>(a.rows());
    for (const auto &p : paulis) x.push_back((p.conjugate().cwiseProduct(a)).sum().imag() * scale);
    return x;
}

}  // namespace testing_support
