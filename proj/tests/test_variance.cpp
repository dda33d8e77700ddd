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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "symlie/dense_oracle.hpp"
#include "symlie/pauli.hpp"
#include "symlie/statevector.hpp"
#include "symlie/variance.hpp"

using namespace symlie;

namespace {

const Complex I(0.0, 1.0);
constexpr double kPi = std::numbers::pi;

StateVector random_state(int n, Rng &rng) {
    std::vector<Complex> v(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &a : v) {
        a = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
        norm += std::norm(a);
    }
    for (auto &a : v) a /= std::sqrt(norm);
    return StateVector(n, std::move(v));
}

Eigen::VectorXcd vec(const StateVector &s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
    return v;
}

/// Dense operator of a single gate by applying it to each basis state.
DenseOperator gate_matrix(int n, const Gate &g, std::vector<double> params) {
    Circuit c(n);
    c.add(g);
    params.resize(static_cast<std::size_t>(std::max(c.n_params(), 1)));
    return circuit_unitary(c, params);
}

DenseOperator pauli_on(int n, std::initializer_list<std::pair<int, char>> factors) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (auto [q, d] : factors) s[static_cast<std::size_t>(q)] = d;
    return pauli_matrix(PauliString::parse(s));
}

Dataset random_graph_dataset(int n, int size, std::uint64_t seed) { return make_graph_dataset(n, size, 0.4, seed); }

std::vector<double> random_params(Rng &rng, int count) {
    std::vector<double> p(static_cast<std::size_t>(count));
    for (auto &x : p) x = rng.uniform(-2 * kPi, 2 * kPi);
    return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Gates

TEST(Gates, RxPiFlipsToMinusIOne) {
    StateVector s(1);
    s = apply_gate(s, Gate{GateKind::RX, {0}, {0}}, std::vector<double>{kPi});
    EXPECT_NEAR(std::abs(s[0]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[1] - (-I)), 0.0, 1e-15);
}

TEST(Gates, ValueFormLeavesInputUntouched) {
    const StateVector s(2);
    const auto out = apply_gate(s, Gate{GateKind::H, {0}, {}}, std::vector<double>{});
    EXPECT_EQ(s[0], Complex(1.0));
    EXPECT_NEAR(std::abs(out[0] - 1 / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out[2] - 1 / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_THROW(static_cast<void>(apply_gate(s, Gate{GateKind::RX, {0}, {3}}, std::vector<double>{0.1})), PreconditionViolation);
}

TEST(Gates, ZzPhasesComputationalStates) {
    for (double theta : {0.3, -1.7, 2.9}) {
        for (std::size_t b = 0; b < 4; ++b) {
            StateVector s = StateVector::basis(2, b);
            s = apply_gate(s, Gate{GateKind::ZZ, {0, 1}, {0}}, std::vector<double>{theta});
            const double parity = (b == 0 || b == 3) ? 1.0 : -1.0;
            EXPECT_NEAR(std::abs(s[b] - std::exp(-I * theta / 2.0 * parity)), 0.0, 1e-15);
        }
    }
}

TEST(Gates, ZzEqualsCnotRzCnot) {
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        const double theta = rng.uniform(-2 * kPi, 2 * kPi);
        const StateVector in = random_state(2, rng);
        StateVector a = in, b = in;
        a = apply_gate(a, Gate{GateKind::ZZ, {0, 1}, {0}}, std::vector<double>{theta});
        b = apply_gate(b, Gate{GateKind::CNOT, {0, 1}, {}}, std::vector<double>{});
        b = apply_gate(b, Gate{GateKind::RZ, {1}, {0}}, std::vector<double>{theta});
        b = apply_gate(b, Gate{GateKind::CNOT, {0, 1}, {}}, std::vector<double>{});
        EXPECT_LE((vec(a) - vec(b)).norm(), 1e-12);
    }
}

TEST(Gates, MatchDenseDefinitions) {
    const int n = 3;
    const double t = 0.731;
    const auto id = DenseOperator::Identity(8, 8);
    auto rot = [&](int q, char p, double a) { return DenseOperator(std::cos(a / 2) * id - I * std::sin(a / 2) * pauli_on(n, {{q, p}})); };
    EXPECT_LE((gate_matrix(n, {GateKind::RX, {1}, {0}}, {t}) - rot(1, '1', t)).norm(), 1e-14);
    EXPECT_LE((gate_matrix(n, {GateKind::RY, {2}, {0}}, {t}) - rot(2, '2', t)).norm(), 1e-14);
    EXPECT_LE((gate_matrix(n, {GateKind::RZ, {0}, {0}}, {t}) - rot(0, '3', t)).norm(), 1e-14);
    const DenseOperator zz = std::cos(t / 2) * id - I * std::sin(t / 2) * pauli_on(n, {{0, '3'}, {2, '3'}});
    EXPECT_LE((gate_matrix(n, {GateKind::ZZ, {2, 0}, {0}}, {t}) - zz).norm(), 1e-14);
    const DenseOperator h = (pauli_on(n, {{1, '1'}}) + pauli_on(n, {{1, '3'}})) / std::sqrt(2.0);
    EXPECT_LE((gate_matrix(n, {GateKind::H, {1}, {}}, {}) - h).norm(), 1e-14);
    const DenseOperator p0 = (id + pauli_on(n, {{0, '3'}})) / 2.0, p1 = (id - pauli_on(n, {{0, '3'}})) / 2.0;
    EXPECT_LE((gate_matrix(n, {GateKind::CNOT, {0, 2}, {}}, {}) - (p0 + p1 * pauli_on(n, {{2, '1'}}))).norm(), 1e-14);
    EXPECT_LE((gate_matrix(n, {GateKind::CZ, {0, 2}, {}}, {}) - (p0 + p1 * pauli_on(n, {{2, '3'}}))).norm(), 1e-14);
    // ROT3 slots (a, b, c) in application order: RZ(c) RY(b) RZ(a)
    const double a = 0.4, b = -1.3, c = 2.2;
    EXPECT_LE((gate_matrix(n, {GateKind::ROT3, {1}, {0, 1, 2}}, {a, b, c}) - rot(1, '3', c) * rot(1, '2', b) * rot(1, '3', a)).norm(),
              1e-14);
}

TEST(Gates, PreserveNormThroughRandomCircuits) {
    Rng rng(11);
    const GateKind kinds[] = {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::ZZ, GateKind::CZ, GateKind::CNOT, GateKind::H, GateKind::ROT3};
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t % 5;
        StateVector s = random_state(n, rng);
        for (int step = 0; step < 60; ++step) {
            const GateKind k = kinds[static_cast<std::size_t>(rng.uniform() * 8)];
            std::vector<int> qs{static_cast<int>(rng.uniform() * n)};
            if (gate_arity(k) == 2) qs.push_back((qs[0] + 1 + static_cast<int>(rng.uniform() * (n - 1))) % n);
            std::vector<int> slots;
            for (int i = 0; i < gate_slot_count(k); ++i) slots.push_back(i);
            apply_gate_in_place(s, Gate{k, qs, slots}, random_params(rng, 3));
            ASSERT_NEAR(s.norm_squared(), 1.0, 1e-10);
        }
    }
}

TEST(Circuit, RejectsMalformedGates) {
    Circuit c(3);
    EXPECT_THROW(c.add(GateKind::ZZ, {0, 0}, {0}), PreconditionViolation);
    EXPECT_THROW(c.add(GateKind::RX, {3}, {0}), PreconditionViolation);
    EXPECT_THROW(c.add(GateKind::RX, {0}, {}), PreconditionViolation);
    EXPECT_THROW(c.add(GateKind::ROT3, {0}, {0}), PreconditionViolation);
    EXPECT_THROW(c.add(GateKind::CNOT, {0}, {}), PreconditionViolation);
    c.add(GateKind::RX, {0}, {1});
    EXPECT_THROW(c.validate(), PreconditionViolation);
}

// ---------------------------------------------------------------------------
// Graph states, observable, loss

TEST(GraphState, Examples) {
    const auto empty = graph_state(Graph{2, {}});
    for (std::size_t b = 0; b < 4; ++b) EXPECT_NEAR(std::abs(empty[b] - 0.5), 0.0, 1e-15);
    const auto edge = graph_state(Graph{2, {{0, 1}}});
    const double expect2[] = {0.5, 0.5, 0.5, -0.5};
    for (std::size_t b = 0; b < 4; ++b) EXPECT_NEAR(std::abs(edge[b] - expect2[b]), 0.0, 1e-15);
    const auto tri = graph_state(Graph{3, {{0, 1}, {1, 2}, {0, 2}}});
    const double signs[] = {1, 1, 1, -1, 1, -1, -1, -1};
    for (std::size_t b = 0; b < 8; ++b) EXPECT_NEAR(std::abs(tri[b] - signs[b] / std::sqrt(8.0)), 0.0, 1e-15);
}

TEST(GraphState, UniformMagnitudesAndValidation) {
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        const auto s = graph_state(erdos_renyi(6, 0.5, rng));
        for (std::size_t b = 0; b < s.size(); ++b) {
            EXPECT_NEAR(std::abs(s[b]), 0.125, 1e-15);
            EXPECT_EQ(s[b].imag(), 0.0);
        }
    }
    EXPECT_THROW(graph_state(Graph{3, {{0, 0}}}), PreconditionViolation);
    EXPECT_THROW(graph_state(Graph{3, {{0, 3}}}), PreconditionViolation);
    EXPECT_THROW(graph_state(Graph{3, {{0, 1}, {1, 0}}}), PreconditionViolation);
}

TEST(GraphState, Connectivity) {
    EXPECT_TRUE(is_connected(Graph{1, {}}));
    EXPECT_FALSE(is_connected(Graph{2, {}}));
    EXPECT_TRUE(is_connected(Graph{4, {{0, 1}, {1, 2}, {2, 3}}}));
    EXPECT_FALSE(is_connected(Graph{4, {{0, 1}, {2, 3}}}));
    Rng rng(1);
    EXPECT_EQ(erdos_renyi(5, 1.0, rng).edges.size(), 10u);
    EXPECT_EQ(erdos_renyi(5, 0.0, rng).edges.size(), 0u);
}

TEST(Observable, ParityExpectation) {
    EXPECT_DOUBLE_EQ(expectation_parity(StateVector(4)), 1.0);
    EXPECT_NEAR(expectation_parity(graph_state(Graph{4, {}})), 0.0, 1e-15);
    EXPECT_NEAR(expectation_parity(graph_state(Graph{2, {{0, 1}}})), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(expectation_parity(StateVector::basis(3, 0b011)), 1.0);
    EXPECT_DOUBLE_EQ(expectation_parity(StateVector::basis(3, 0b111)), -1.0);
}

TEST(Loss, Examples) {
    const Circuit empty(3);
    const std::vector<double> none;
    EXPECT_DOUBLE_EQ(mse_loss(empty, none, Dataset{{StateVector(3), 1.0}}), 0.0);
    EXPECT_DOUBLE_EQ(mse_loss(empty, none, Dataset{{StateVector(3), -1.0}}), 4.0);
    EXPECT_THROW(mse_loss(empty, none, Dataset{{StateVector(3), 0.5}}), PreconditionViolation);
    EXPECT_THROW(mse_loss(empty, none, Dataset{}), PreconditionViolation);
    Rng rng(4);
    const auto c = build_ansatz(AnsatzKind::CyclicSymmetric, 4, 3);
    const auto data = random_graph_dataset(4, 10, 77);
    for (int t = 0; t < 50; ++t) {
        const double l = mse_loss(c, random_params(rng, c.n_params()), data);
        EXPECT_GE(l, 0.0);
        EXPECT_LE(l, 4.0);
    }
}

// ---------------------------------------------------------------------------
// Gradients

TEST(Gradient, StationaryAtMinimum) {
    // identity circuit on |0...0> with label +1 is a global minimum of the loss
    const Dataset data{{StateVector(4), 1.0}, {StateVector::basis(4, 0b0011), 1.0}};
    for (AnsatzKind k : {AnsatzKind::PermutationSymmetric, AnsatzKind::CyclicSymmetric, AnsatzKind::StronglyEntangling}) {
        const auto c = build_ansatz(k, 4, 2);
        const std::vector<double> zero(static_cast<std::size_t>(c.n_params()), 0.0);
        for (int s = 0; s < c.n_params(); ++s) {
            EXPECT_NEAR(gradient(c, zero, data, s), 0.0, 1e-8);
            EXPECT_NEAR(finite_difference_gradient(c, zero, data, s), 0.0, 1e-8);
        }
    }
}

TEST(Gradient, SingleQubitClosedForm) {
    Circuit c(1);
    c.add(GateKind::RX, {0}, {0});
    for (double y : {1.0, -1.0})
        for (double theta : {-2.5, -0.4, 0.0, 0.9, 3.0}) {
            const Dataset data{{StateVector(1), y}};
            const double expected = -2.0 * (std::cos(theta) - y) * std::sin(theta);
            EXPECT_NEAR(gradient(c, std::vector<double>{theta}, data, 0), expected, 1e-12);
            EXPECT_NEAR(mse_loss(c, std::vector<double>{theta}, data), std::pow(std::cos(theta) - y, 2), 1e-12);
        }
}

TEST(Gradient, ParameterShiftMatchesFiniteDifferences) {
    for (AnsatzKind k : {AnsatzKind::PermutationSymmetric, AnsatzKind::CyclicSymmetric, AnsatzKind::StronglyEntangling}) {
        Rng rng(derive_seed(31, static_cast<std::uint64_t>(k)));
        const auto data = random_graph_dataset(4, 6, 5);
        for (int t = 0; t < 10; ++t) {
            const auto c = build_ansatz(k, 4, 1 + t % 3);
            const auto p = random_params(rng, c.n_params());
            for (int s = 0; s < c.n_params(); s += 2) EXPECT_NEAR(gradient(c, p, data, s), finite_difference_gradient(c, p, data, s), 1e-6);
        }
    }
}

TEST(Gradient, AdjointMatchesParameterShift) {
    for (AnsatzKind k : {AnsatzKind::PermutationSymmetric, AnsatzKind::CyclicSymmetric, AnsatzKind::StronglyEntangling})
        for (int n : {2, 3, 5}) {
            Rng rng(derive_seed(41, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n)));
            const auto data = random_graph_dataset(n, 4, 9);
            const auto c = build_ansatz(k, n, 2);
            const AdjointProgram prog(c);
            for (int t = 0; t < 3; ++t) {
                const auto p = random_params(rng, c.n_params());
                const auto g = prog.loss_gradient(p, data);
                ASSERT_EQ(g.size(), static_cast<std::size_t>(c.n_params()));
                for (int s = 0; s < c.n_params(); ++s) EXPECT_NEAR(g[static_cast<std::size_t>(s)], gradient(c, p, data, s), 1e-10);
            }
        }
}

TEST(Gradient, AdjointHandlesEveryGateKind) {
    Circuit c(3);
    c.add(GateKind::H, {0}).add(GateKind::RX, {0}, {0}).add(GateKind::ZZ, {0, 2}, {1}).add(GateKind::ZZ, {1, 2}, {1});
    c.add(GateKind::CZ, {0, 1}).add(GateKind::ROT3, {2}, {2, 3, 0}).add(GateKind::CNOT, {2, 0}).add(GateKind::RY, {1}, {4});
    c.add(GateKind::RZ, {0}, {1}).add(GateKind::ZZ, {0, 1}, {4});
    Rng rng(6);
    const auto data = random_graph_dataset(3, 4, 2);
    const AdjointProgram prog(c);
    const auto p = random_params(rng, c.n_params());
    const auto g = prog.loss_gradient(p, data);
    for (int s = 0; s < c.n_params(); ++s) EXPECT_NEAR(g[static_cast<std::size_t>(s)], finite_difference_gradient(c, p, data, s), 1e-7);
}

// ---------------------------------------------------------------------------
// Ansatz structure

TEST(Ansatz, SlotCounts) {
    EXPECT_EQ(build_ansatz(AnsatzKind::PermutationSymmetric, 6, 12).n_params(), 36);
    EXPECT_EQ(build_ansatz(AnsatzKind::StronglyEntangling, 6, 2).n_params(), 36);
    EXPECT_EQ(build_ansatz(AnsatzKind::CyclicSymmetric, 6, 9).n_params(), 36);
    AnsatzOptions no4;
    no4.cyclic_theta4 = false;
    EXPECT_EQ(build_ansatz(AnsatzKind::CyclicSymmetric, 6, 9, no4).n_params(), 27);
    EXPECT_THROW(build_ansatz(AnsatzKind::CyclicSymmetric, 1, 1), PreconditionViolation);
    EXPECT_THROW(build_ansatz(AnsatzKind::CyclicSymmetric, 4, 0), PreconditionViolation);
}

TEST(Ansatz, LayerStructure) {
    const auto se = build_ansatz(AnsatzKind::StronglyEntangling, 4, 1);
    std::vector<std::pair<int, int>> cnots;
    for (const auto &g : se.gates())
        if (g.kind == GateKind::CNOT) cnots.emplace_back(g.qubits[0], g.qubits[1]);
    EXPECT_EQ(cnots, (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}, {2, 0}, {3, 1}}));
    AnsatzOptions single;
    single.double_cnot_ring = false;
    int count = 0;
    for (const auto &g : build_ansatz(AnsatzKind::StronglyEntangling, 4, 3, single).gates()) count += g.kind == GateKind::CNOT;
    EXPECT_EQ(count, 12);
    EXPECT_EQ(ring_pairs(4, 2).size(), 2u);
    EXPECT_EQ(ring_pairs(5, 2).size(), 5u);
    EXPECT_EQ(ring_pairs(2, 1).size(), 1u);
    int zz = 0;
    for (const auto &g : build_ansatz(AnsatzKind::PermutationSymmetric, 5, 1).gates()) zz += g.kind == GateKind::ZZ;
    EXPECT_EQ(zz, 10);
}

TEST(Ansatz, LayerCountsMatchParameterBudget) {
    for (int n = 2; n <= 16; ++n)
        for (AnsatzKind k : {AnsatzKind::PermutationSymmetric, AnsatzKind::CyclicSymmetric, AnsatzKind::StronglyEntangling}) {
            const int layers = layers_for(k, n, 6 * n);
            const int params = build_ansatz(k, n, layers).n_params();
            EXPECT_GE(params, 6 * n);
            EXPECT_LT(params - 6 * n, slots_per_layer(k, n));
        }
}

TEST(Ansatz, ProbeSlotIsFirstSlotOfMiddleLayer) {
    EXPECT_EQ(probe_slot(AnsatzKind::PermutationSymmetric, 4, 8), 9);
    EXPECT_EQ(probe_slot(AnsatzKind::CyclicSymmetric, 6, 9), 16);
    EXPECT_EQ(probe_slot(AnsatzKind::StronglyEntangling, 6, 2), 0);
    EXPECT_EQ(probe_slot(AnsatzKind::StronglyEntangling, 6, 3), 18);
    EXPECT_EQ(probe_slot(AnsatzKind::PermutationSymmetric, 4, 1), 0);
}

TEST(Ansatz, EquivariantUnderItsSymmetry) {
    Rng rng(12);
    const std::pair<AnsatzKind, Family> cases[] = {{AnsatzKind::PermutationSymmetric, Family::Symmetric},
                                                   {AnsatzKind::CyclicSymmetric, Family::Cyclic}};
    for (auto [kind, family] : cases)
        for (int n = 2; n <= 6; ++n) {
            const auto c = build_ansatz(kind, n, 2);
            const auto u = circuit_unitary(c, random_params(rng, c.n_params()));
            for (const auto &p : enumerate_elements(GroupSpec(family, n)).elements)
                EXPECT_LE((testing_support::conjugate_by_permutation(qubit_permutation_matrix(p), u) - u).norm(), 1e-10);
        }
    // the strongly entangling ansatz has no such symmetry
    const auto c = build_ansatz(AnsatzKind::StronglyEntangling, 4, 1);
    const auto u = circuit_unitary(c, random_params(rng, c.n_params()));
    EXPECT_GT((testing_support::conjugate_by_permutation(qubit_permutation_matrix(Permutation::cycle(4, {0, 1, 2, 3})), u) - u).norm(), 1e-3);
}

TEST(Ansatz, SlotGeneratorsLieInInvariantAlgebra) {
    const std::pair<AnsatzKind, Family> cases[] = {{AnsatzKind::PermutationSymmetric, Family::Symmetric},
                                                   {AnsatzKind::CyclicSymmetric, Family::Cyclic}};
    for (auto [kind, family] : cases)
        for (int n = 3; n <= 5; ++n) {
            const auto basis = enumerate_invariant_basis(GroupSpec(family, n));
            std::map<std::string, std::size_t> orbit;
            for (std::size_t o = 0; o < basis.size(); ++o)
                for (const auto &m : basis[o].members) orbit[m.str()] = o;
            const auto c = build_ansatz(kind, n, 1);
            for (int slot = 0; slot < c.n_params(); ++slot) {
                // generator of the slot: sum of the Pauli strings of its gates
                std::map<std::string, int> terms;
                for (const auto &occ : slot_occurrences(c, slot)) {
                    const auto &g = c.gates()[occ.gate];
                    std::string s(static_cast<std::size_t>(n), '0');
                    const char d = g.kind == GateKind::RX ? '1' : g.kind == GateKind::RY ? '2' : '3';
                    for (int q : g.qubits) s[static_cast<std::size_t>(q)] = d;
                    ++terms[s];
                }
                // every touched orbit is covered completely with one coefficient
                std::map<std::size_t, std::set<int>> coeffs;
                std::map<std::size_t, std::size_t> hits;
                for (const auto &[s, k] : terms) {
                    coeffs[orbit.at(s)].insert(k);
                    ++hits[orbit.at(s)];
                }
                for (const auto &[o, ks] : coeffs) {
                    EXPECT_EQ(ks.size(), 1u);
                    EXPECT_EQ(hits[o], basis[o].weight()) << basis[o].representative.str();
                }
            }
        }
}

// ---------------------------------------------------------------------------
// Experiment plumbing

TEST(Dataset, BalancedAndLabeledByConnectivity) {
    const auto data = make_graph_dataset(5, 11, 0.4, 123);
    ASSERT_EQ(data.size(), 11u);
    int pos = 0;
    for (const auto &d : data) {
        pos += d.label > 0;
        EXPECT_NEAR(d.state.norm_squared(), 1.0, 1e-12);
    }
    EXPECT_EQ(pos, 6);
    EXPECT_EQ(data[0].label, 1.0);
    EXPECT_EQ(data[1].label, -1.0);
    EXPECT_THROW(make_graph_dataset(6, 10, 1e-12, 1), DatasetGenerationFailed);
    EXPECT_THROW(make_graph_dataset(3, 10, 1.0, 1), DatasetGenerationFailed);
}

TEST(Statistics, SampleVariance) {
    const std::vector<double> xs{1, 2, 3, 4};
    auto [var, mean] = sample_variance(xs);
    EXPECT_DOUBLE_EQ(mean, 2.5);
    EXPECT_DOUBLE_EQ(var, 5.0 / 3.0);
    EXPECT_THROW(sample_variance(std::vector<double>{1.0}), PreconditionViolation);
}

TEST(Rng, DeterministicAndInRange) {
    Rng a(5), b(5);
    for (int i = 0; i < 1000; ++i) {
        const double x = a.uniform();
        EXPECT_EQ(x, b.uniform());
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, 1.0);
    }
    EXPECT_NE(derive_seed(1, 2, 3, 4), derive_seed(1, 2, 3, 5));
    EXPECT_NE(derive_seed(1, 2, 3, 4), derive_seed(2, 2, 3, 4));
    // first draw of the documented generator
    EXPECT_EQ(Rng(5489).next_u64(), 14514284786278117030ULL);
}

TEST(Experiment, ValidatesConfig) {
    ExperimentConfig cfg;
    cfg.samples_per_point = 0;
    EXPECT_THROW(run_variance_experiment(cfg), PreconditionViolation);
    cfg.samples_per_point = 10;
    cfg.edge_probability = 1.5;
    EXPECT_THROW(run_variance_experiment(cfg), PreconditionViolation);
}

TEST(Experiment, DeterministicAcrossRunsAndWorkerCounts) {
    ExperimentConfig cfg;
    cfg.min_qubits = 4;
    cfg.max_qubits = 5;
    cfg.qubit_step = 1;
    cfg.samples_per_point = 12;
    cfg.dataset_size = 8;
    cfg.seed = 7;
    cfg.workers = 1;
    const auto a = run_variance_experiment(cfg);
    cfg.workers = 3;
    const auto b = run_variance_experiment(cfg);
    ASSERT_EQ(a.size(), 6u);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].variance, b[i].variance);
        EXPECT_EQ(a[i].mean, b[i].mean);
        EXPECT_EQ(a[i].samples, 12);
        EXPECT_GT(a[i].variance, 0.0);
    }
    cfg.seed = 8;
    EXPECT_NE(run_variance_experiment(cfg)[0].variance, a[0].variance);
}

TEST(Experiment, ParameterShiftPathAgreesWithAdjoint) {
    ExperimentConfig cfg;
    cfg.min_qubits = cfg.max_qubits = 4;
    cfg.samples_per_point = 4;
    cfg.dataset_size = 4;
    cfg.all_slots = true;
    const auto a = run_variance_experiment(cfg);
    cfg.method = GradientMethod::ParameterShift;
    const auto b = run_variance_experiment(cfg);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].slot, b[i].slot);
        EXPECT_NEAR(a[i].variance, b[i].variance, 1e-10 + 1e-8 * a[i].variance);
    }
}
