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

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "symlie/errors.hpp"

namespace symlie {

using Complex = std::complex<double>;

/// 2^N x 2^N complex matrix. Basis index bit (N-1-j) holds qubit j, so qubit 0
/// is the leftmost Kronecker factor.
using DenseOperator = Eigen::MatrixXcd;

inline constexpr int kDefaultMaxDenseQubits = 12;

inline void check_dense_cap(int n_qubits, int max_qubits) {
    if (n_qubits < 1) throw PreconditionViolation("need at least one qubit");
    if (n_qubits > max_qubits) {
        throw DimensionCapExceeded("dense operator on " + std::to_string(n_qubits) + " qubits exceeds cap of " +
                                   std::to_string(max_qubits) + " qubits");
    }
}

inline int qubit_bit(int n_qubits, int qubit) { return n_qubits - 1 - qubit; }

}  // namespace symlie
