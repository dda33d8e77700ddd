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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include "symlie/combinatorics.hpp"
#include "symlie/dense.hpp"
#include "symlie/errors.hpp"
#include "symlie/pauli.hpp"
#include "symlie/permutation.hpp"

namespace symlie {

struct CommutantOptions {
    double relative_tolerance = 1e-8;
    double min_gap_ratio = 10.0;
    int max_qubits = 5;
    bool keep_nullspace = false;
};

struct CommutantReport {
    int qubits = 0;
    std::uint64_t basis_size = 0;       // 4^N - 1
    std::uint64_t constraint_count = 0; // real rows of the stacked constraint map
    std::uint64_t rank = 0;
    std::uint64_t dimension = 0;        // basis_size - rank
    double tolerance = 0.0;             // absolute singular value cutoff
    double largest_singular = 0.0;
    double smallest_accepted = 0.0;
    double largest_rejected = 0.0;
    double gap = 0.0;                   // smallest_accepted - largest_rejected
    double gap_ratio = std::numeric_limits<double>::infinity();
    bool determinate = true;
    /// Real coefficient vectors over the Pauli basis (index 1..4^N-1), only with keep_nullspace.
    std::vector<Eigen::VectorXd> nullspace;
};

inline void to_json(nlohmann::json &j, const CommutantReport &r) {
    j = nlohmann::json{{"qubits", r.qubits},
                       {"basis_size", r.basis_size},
                       {"constraint_count", r.constraint_count},
                       {"rank", r.rank},
                       {"dimension", r.dimension},
                       {"tolerance", r.tolerance},
                       {"largest_singular", r.largest_singular},
                       {"smallest_accepted", r.smallest_accepted},
                       {"largest_rejected", r.largest_rejected},
                       {"gap", r.gap},
                       {"determinate", r.determinate}};
    if (std::isfinite(r.gap_ratio)) {
        j["gap_ratio"] = r.gap_ratio;
    } else {
        j["gap_ratio"] = nullptr;
    }
}

/// Pauli string with lexicographic index `index` in {0..3}^N.
inline PauliString pauli_from_index(int n, std::uint64_t index) {
    std::vector<std::uint8_t> d(static_cast<size_t>(n));
    for (int j = n - 1; j >= 0; --j) {
        d[static_cast<size_t>(j)] = static_cast<std::uint8_t>(index & 3U);
        index >>= 2;
    }
    return PauliString(std::move(d));
}

/// sum_j coeffs[j-1] * i * P_j over the non-identity Pauli basis.
inline DenseOperator algebra_element(std::span<const double> coeffs, int n) {
    const std::uint64_t count = (std::uint64_t{1} << (2 * n)) - 1;
    if (coeffs.size() != count) throw PreconditionViolation("coefficient vector must have 4^N - 1 entries");
    const Eigen::Index dim = Eigen::Index{1} << n;
    DenseOperator a = DenseOperator::Zero(dim, dim);
    for (std::uint64_t j = 1; j <= count; ++j) {
        double c = coeffs[j - 1];
        if (c != 0.0) a += Complex(0.0, c) * pauli_matrix(pauli_from_index(n, j));
    }
    return a;
}

/// Dimension of { a in su(2^N) : [B, a] = 0 for every B in generators } by SVD
/// of the real-linear map c -> ([B, sum_j c_j i P_j])_B.
///
/// The commutant of a generating set equals the commutant of the group it
/// generates, so generator matrices are enough. Throws IndeterminateRank when
/// the singular values do not separate cleanly at the cutoff.
inline CommutantReport commutant_dimension(std::span<const DenseOperator> gens, int n,
                                           const CommutantOptions &opt = {}) {
    check_dense_cap(n, opt.max_qubits);
    const Eigen::Index dim = Eigen::Index{1} << n;
    for (const auto &b : gens) {
        if (b.rows() != dim || b.cols() != dim) throw PreconditionViolation("generator is not 2^N x 2^N");
    }
    CommutantReport rep;
    rep.qubits = n;
    rep.basis_size = (std::uint64_t{1} << (2 * n)) - 1;
    const auto cols = static_cast<Eigen::Index>(rep.basis_size);
    const Eigen::Index block_rows = 2 * dim * dim;
    rep.constraint_count = static_cast<std::uint64_t>(block_rows) * gens.size();

    if (gens.empty()) {
        rep.dimension = rep.basis_size;
        if (opt.keep_nullspace) {
            for (Eigen::Index j = 0; j < cols; ++j) rep.nullspace.push_back(Eigen::VectorXd::Unit(cols, j));
        }
        return rep;
    }

    Eigen::MatrixXd a(static_cast<Eigen::Index>(rep.constraint_count), cols);
    const Complex iu(0.0, 1.0);
    for (Eigen::Index j = 0; j < cols; ++j) {
        const DenseOperator p = pauli_matrix(pauli_from_index(n, static_cast<std::uint64_t>(j + 1)));
        for (size_t g = 0; g < gens.size(); ++g) {
            const DenseOperator c = iu * (gens[g] * p - p * gens[g]);
            const Eigen::Index base = static_cast<Eigen::Index>(g) * block_rows;
            for (Eigen::Index e = 0; e < dim * dim; ++e) {
                a(base + 2 * e, j) = c.data()[e].real();
                a(base + 2 * e + 1, j) = c.data()[e].imag();
            }
        }
    }

    Eigen::VectorXd sv;
    Eigen::MatrixXd v;
    if (opt.keep_nullspace) {
        // BDCSVD in Eigen 3.4 can return a wrong right singular vector inside a
        // large zero block; Jacobi is slower but its V is reliable.
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
        sv = svd.singularValues();
        v = svd.matrixV();
    } else {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
        sv = svd.singularValues();
    }

    rep.largest_singular = sv.size() ? sv(0) : 0.0;
    rep.tolerance = opt.relative_tolerance * rep.largest_singular;
    std::uint64_t rank = 0;
    double smallest_acc = 0.0, largest_rej = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (rep.largest_singular > 0.0 && sv(i) > rep.tolerance) {
            ++rank;
            smallest_acc = sv(i);
        } else {
            largest_rej = std::max(largest_rej, sv(i));
        }
    }
    rep.rank = rank;
    rep.dimension = rep.basis_size - rank;
    rep.smallest_accepted = smallest_acc;
    rep.largest_rejected = largest_rej;
    if (rank > 0) {
        rep.gap = smallest_acc - largest_rej;
        rep.gap_ratio = largest_rej > 0.0 ? smallest_acc / largest_rej : std::numeric_limits<double>::infinity();
        rep.determinate = rep.gap >= opt.min_gap_ratio * rep.tolerance && rep.gap_ratio >= opt.min_gap_ratio;
    }
    if (!rep.determinate) {
        throw IndeterminateRank("singular value gap too small: smallest accepted " + std::to_string(smallest_acc) +
                                ", largest rejected " + std::to_string(largest_rej) + ", cutoff " +
                                std::to_string(rep.tolerance));
    }
    if (opt.keep_nullspace) {
        for (Eigen::Index j = static_cast<Eigen::Index>(rank); j < cols; ++j) rep.nullspace.push_back(v.col(j));
    }
    return rep;
}

inline CommutantReport commutant_dimension(const std::vector<DenseOperator> &gens, int n,
                                           const CommutantOptions &opt = {}) {
    return commutant_dimension(std::span<const DenseOperator>(gens), n, opt);
}

/// U_alpha for each generator of the group.
inline std::vector<DenseOperator> symmetry_generator_matrices(const ProductGroupSpec &spec,
                                                              int max_qubits = kDefaultMaxDenseQubits) {
    std::vector<DenseOperator> out;
    for (const auto &g : generators(spec)) out.push_back(qubit_permutation_matrix(g, max_qubits));
    return out;
}

/// U_alpha for every group element; debug mode for commutant checks.
inline std::vector<DenseOperator> symmetry_group_matrices(const ProductGroupSpec &spec,
                                                          std::uint64_t order_cap = kDefaultOrderCap,
                                                          int max_qubits = kDefaultMaxDenseQubits) {
    std::vector<DenseOperator> out;
    for (const auto &g : enumerate_elements(spec, order_cap).elements) {
        if (!g.is_identity()) out.push_back(qubit_permutation_matrix(g, max_qubits));
    }
    return out;
}

/// H^(N) = sum_j H_j with H = (sigma_0 - sigma_3)/2: diagonal entry b is the Hamming weight of b.
inline DenseOperator energy_hamiltonian(int n, int max_qubits = kDefaultMaxDenseQubits) {
    check_dense_cap(n, max_qubits);
    const Eigen::Index dim = Eigen::Index{1} << n;
    DenseOperator h = DenseOperator::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) h(b, b) = std::popcount(static_cast<std::uint64_t>(b));
    return h;
}

/// [C(N,0), ..., C(N,N)]: eigenspace sizes of H^(N).
inline std::vector<std::uint64_t> block_profile(int n) {
    if (n < 1) throw PreconditionViolation("N must be >= 1");
    std::vector<std::uint64_t> out;
    for (int i = 0; i <= n; ++i) out.push_back(binomial(n, i).convert_to<std::uint64_t>());
    return out;
}

/// Basis indices sorted by Hamming weight (stable); row r of the energy-ordered
/// basis is computational basis state order[r].
inline std::vector<Eigen::Index> energy_order(int n) {
    std::vector<Eigen::Index> order(std::size_t{1} << n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [](Eigen::Index a, Eigen::Index b) {
        return std::popcount(static_cast<std::uint64_t>(a)) < std::popcount(static_cast<std::uint64_t>(b));
    });
    return order;
}

inline DenseOperator to_energy_basis(const DenseOperator &a, int n) {
    const auto order = energy_order(n);
    const auto dim = static_cast<Eigen::Index>(order.size());
    if (a.rows() != dim || a.cols() != dim) throw PreconditionViolation("operator is not 2^N x 2^N");
    DenseOperator out(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) out(r, c) = a(order[static_cast<size_t>(r)], order[static_cast<size_t>(c)]);
    return out;
}

/// True iff every entry outside the contiguous diagonal blocks has magnitude <= tol.
inline bool is_block_diagonal(const DenseOperator &a, std::span<const std::uint64_t> profile, double tol) {
    std::uint64_t total = 0;
    for (auto s : profile) total += s;
    if (a.rows() != a.cols() || total != static_cast<std::uint64_t>(a.rows())) {
        throw PreconditionViolation("block profile does not sum to the operator dimension");
    }
    std::vector<std::size_t> block_of(static_cast<std::size_t>(a.rows()));
    std::size_t pos = 0;
    for (std::size_t b = 0; b < profile.size(); ++b)
        for (std::uint64_t k = 0; k < profile[b]; ++k) block_of[pos++] = b;
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            if (block_of[static_cast<size_t>(r)] != block_of[static_cast<size_t>(c)] && std::abs(a(r, c)) > tol) return false;
    return true;
}

inline bool is_block_diagonal(const DenseOperator &a, const std::vector<std::uint64_t> &profile, double tol) {
    return is_block_diagonal(a, std::span<const std::uint64_t>(profile), tol);
}

/// exp(a) for skew-Hermitian a, via the eigendecomposition of the Hermitian matrix -i a.
inline DenseOperator skew_hermitian_exp(const DenseOperator &a) {
    const DenseOperator h = Complex(0.0, -1.0) * a;
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(0.5 * (h + h.adjoint()));
    const Eigen::VectorXd &lam = es.eigenvalues();
    Eigen::VectorXcd phases(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k) phases(k) = std::polar(1.0, lam(k));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Checks that exp(a) lies in the invariant group: unitary, det 1, commuting with
/// every generator, all within `tol`. Throws PreconditionViolation unless a is
/// skew-Hermitian, traceless and commutes with the generators.
inline bool exp_membership_check(const DenseOperator &a, std::span<const DenseOperator> gens, double tol) {
    if (a.rows() != a.cols()) throw PreconditionViolation("operator must be square");
    const double scale = std::max(1.0, a.norm());
    if ((a + a.adjoint()).norm() > tol * scale) throw PreconditionViolation("operator is not skew-Hermitian");
    if (std::abs(a.trace()) > tol * scale) throw PreconditionViolation("operator is not traceless");
    for (const auto &b : gens) {
        if ((a * b - b * a).norm() > tol * scale * std::max(1.0, b.norm())) {
            throw PreconditionViolation("operator does not commute with the symmetry generators");
        }
    }
    const DenseOperator u = skew_hermitian_exp(a);
    const auto id = DenseOperator::Identity(u.rows(), u.cols());
    if ((u * u.adjoint() - id).norm() > tol) return false;
    if (std::abs(u.determinant() - Complex(1.0, 0.0)) > tol) return false;
    for (const auto &b : gens) {
        if ((u * b - b * u).norm() > tol * std::max(1.0, b.norm())) return false;
    }
    return true;
}

inline bool exp_membership_check(const DenseOperator &a, const std::vector<DenseOperator> &gens, double tol) {
    return exp_membership_check(a, std::span<const DenseOperator>(gens), tol);
}

}  // namespace symlie
