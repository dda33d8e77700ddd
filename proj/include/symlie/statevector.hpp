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
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symlie/dense.hpp"
#include "symlie/errors.hpp"

namespace symlie {

/// Pure state on n qubits; amplitude index bit (n-1-q) is qubit q.
class StateVector {
  public:
    StateVector() = default;
    explicit StateVector(int n_qubits) : n_(n_qubits), amp_(std::size_t{1} << check(n_qubits), Complex(0.0)) {
        amp_[0] = 1.0;
    }
    StateVector(int n_qubits, std::vector<Complex> amplitudes) : n_(n_qubits), amp_(std::move(amplitudes)) {
        if (amp_.size() != (std::size_t{1} << check(n_qubits))) throw PreconditionViolation("amplitude count must be 2^n");
    }

    /// |b> for computational basis index b.
    static StateVector basis(int n_qubits, std::size_t b) {
        StateVector s(n_qubits);
        s.amp_[0] = 0.0;
        s.amp_.at(b) = 1.0;
        return s;
    }

    int qubits() const noexcept { return n_; }
    std::size_t size() const noexcept { return amp_.size(); }
    std::span<Complex> amplitudes() noexcept { return amp_; }
    std::span<const Complex> amplitudes() const noexcept { return amp_; }
    Complex &operator[](std::size_t i) { return amp_[i]; }
    const Complex &operator[](std::size_t i) const { return amp_[i]; }

    double norm_squared() const {
        double s = 0.0;
        for (const auto &a : amp_) s += std::norm(a);
        return s;
    }

    std::size_t mask(int qubit) const { return std::size_t{1} << qubit_bit(n_, qubit); }

  private:
    static int check(int n) {
        if (n < 1 || n > 30) throw PreconditionViolation("state vector needs 1..30 qubits");
        return n;
    }
    int n_ = 0;
    std::vector<Complex> amp_;
};

namespace kernels {

/// Applies [[m00, m01], [m10, m11]] to one qubit.
inline void single(StateVector &s, int q, Complex m00, Complex m01, Complex m10, Complex m11) {
    const std::size_t m = s.mask(q);
    auto a = s.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i & m) continue;
        const Complex x = a[i], y = a[i | m];
        a[i] = m00 * x + m01 * y;
        a[i | m] = m10 * x + m11 * y;
    }
}

inline void rx(StateVector &s, int q, double theta) {
    const double c = std::cos(theta / 2), sn = std::sin(theta / 2);
    single(s, q, c, Complex(0, -sn), Complex(0, -sn), c);
}

inline void ry(StateVector &s, int q, double theta) {
    const double c = std::cos(theta / 2), sn = std::sin(theta / 2);
    single(s, q, c, -sn, sn, c);
}

inline void rz(StateVector &s, int q, double theta) {
    const std::size_t m = s.mask(q);
    const Complex p0 = std::polar(1.0, -theta / 2), p1 = std::polar(1.0, theta / 2);
    auto a = s.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= (i & m) ? p1 : p0;
}

inline void hadamard(StateVector &s, int q) {
    const double r = 1.0 / std::sqrt(2.0);
    single(s, q, r, r, r, -r);
}

/// exp(-i theta/2 Z_a Z_b).
inline void zz(StateVector &s, int qa, int qb, double theta) {
    const std::size_t ma = s.mask(qa), mb = s.mask(qb);
    const Complex same = std::polar(1.0, -theta / 2), diff = std::polar(1.0, theta / 2);
    auto a = s.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= (((i & ma) != 0) == ((i & mb) != 0)) ? same : diff;
}

inline void cz(StateVector &s, int qa, int qb) {
    const std::size_t both = s.mask(qa) | s.mask(qb);
    auto a = s.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i)
        if ((i & both) == both) a[i] = -a[i];
}

inline void cnot(StateVector &s, int control, int target) {
    const std::size_t mc = s.mask(control), mt = s.mask(target);
    auto a = s.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i)
        if ((i & mc) && !(i & mt)) std::swap(a[i], a[i | mt]);
}

}  // namespace kernels

enum class GateKind { RX, RY, RZ, ZZ, CZ, CNOT, H, ROT3 };

inline const char *gate_name(GateKind k) {
    switch (k) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::ZZ: return "ZZ";
    case GateKind::CZ: return "CZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::H: return "H";
    case GateKind::ROT3: return "ROT3";
    }
    return "?";
}

inline int gate_arity(GateKind k) {
    switch (k) {
    case GateKind::ZZ:
    case GateKind::CZ:
    case GateKind::CNOT: return 2;
    default: return 1;
    }
}

inline int gate_slot_count(GateKind k) {
    switch (k) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::ZZ: return 1;
    case GateKind::ROT3: return 3;
    default: return 0;
    }
}

/// A gate with its target qubits and parameter slots. CNOT targets are
/// (control, target). ROT3 slots are listed in application order: slots (a, b, c)
/// give the operator RZ(c) RY(b) RZ(a).
struct Gate {
    GateKind kind = GateKind::H;
    std::vector<int> qubits;
    std::vector<int> slots;
};

/// Ordered gate list over densely numbered shared parameter slots.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(int n_qubits) : n_(n_qubits) {
        if (n_qubits < 1) throw PreconditionViolation("circuit needs at least one qubit");
    }

    int qubits() const noexcept { return n_; }
    int n_params() const noexcept { return n_params_; }
    const std::vector<Gate> &gates() const noexcept { return gates_; }

    Circuit &add(Gate g) {
        if (static_cast<int>(g.qubits.size()) != gate_arity(g.kind)) throw PreconditionViolation(std::string(gate_name(g.kind)) + ": wrong number of qubits");
        if (static_cast<int>(g.slots.size()) != gate_slot_count(g.kind)) throw PreconditionViolation(std::string(gate_name(g.kind)) + ": wrong number of slots");
        for (int q : g.qubits)
            if (q < 0 || q >= n_) throw PreconditionViolation("gate qubit out of range");
        if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) throw PreconditionViolation("gate qubits must be distinct");
        for (int s : g.slots) {
            if (s < 0) throw PreconditionViolation("negative parameter slot");
            n_params_ = std::max(n_params_, s + 1);
        }
        gates_.push_back(std::move(g));
        return *this;
    }

    Circuit &add(GateKind k, std::vector<int> qubits, std::vector<int> slots = {}) {
        return add(Gate{k, std::move(qubits), std::move(slots)});
    }

    /// Throws unless every slot in [0, n_params) is referenced.
    void validate() const {
        std::vector<bool> used(static_cast<std::size_t>(n_params_), false);
        for (const auto &g : gates_)
            for (int s : g.slots) used[static_cast<std::size_t>(s)] = true;
        for (std::size_t s = 0; s < used.size(); ++s)
            if (!used[s]) throw PreconditionViolation("parameter slot " + std::to_string(s) + " is never used");
    }

  private:
    int n_ = 0;
    int n_params_ = 0;
    std::vector<Gate> gates_;
};

/// Applies one gate in place; `angles` holds the gate's own angles (one per slot).
inline void apply_gate_angles(StateVector &s, const Gate &g, std::span<const double> angles) {
    switch (g.kind) {
    case GateKind::RX: kernels::rx(s, g.qubits[0], angles[0]); break;
    case GateKind::RY: kernels::ry(s, g.qubits[0], angles[0]); break;
    case GateKind::RZ: kernels::rz(s, g.qubits[0], angles[0]); break;
    case GateKind::ZZ: kernels::zz(s, g.qubits[0], g.qubits[1], angles[0]); break;
    case GateKind::CZ: kernels::cz(s, g.qubits[0], g.qubits[1]); break;
    case GateKind::CNOT: kernels::cnot(s, g.qubits[0], g.qubits[1]); break;
    case GateKind::H: kernels::hadamard(s, g.qubits[0]); break;
    case GateKind::ROT3:
        kernels::rz(s, g.qubits[0], angles[0]);
        kernels::ry(s, g.qubits[0], angles[1]);
        kernels::rz(s, g.qubits[0], angles[2]);
        break;
    }
}

/// Applies one gate in place, reading angles from the shared parameter vector.
inline void apply_gate_in_place(StateVector &s, const Gate &g, std::span<const double> params) {
    double angles[3] = {0, 0, 0};
    for (std::size_t k = 0; k < g.slots.size(); ++k) {
        const auto slot = static_cast<std::size_t>(g.slots[k]);
        if (slot >= params.size()) throw PreconditionViolation("parameter slot out of range");
        angles[k] = params[slot];
    }
    apply_gate_angles(s, g, std::span<const double>(angles, g.slots.size()));
}

[[nodiscard]] inline StateVector apply_gate(StateVector s, const Gate &g, std::span<const double> params) {
    apply_gate_in_place(s, g, params);
    return s;
}

/// One use of a parameter slot: gate index and position within the gate's slot list.
struct SlotOccurrence {
    std::size_t gate = 0;
    std::size_t position = 0;
};

inline std::vector<SlotOccurrence> slot_occurrences(const Circuit &c, int slot) {
    std::vector<SlotOccurrence> out;
    for (std::size_t g = 0; g < c.gates().size(); ++g)
        for (std::size_t k = 0; k < c.gates()[g].slots.size(); ++k)
            if (c.gates()[g].slots[k] == slot) out.push_back({g, k});
    return out;
}

/// Runs the circuit on `state`. If `shifted` is given, that single occurrence
/// sees its angle offset by `shift`.
inline void run_circuit(const Circuit &c, std::span<const double> params, StateVector &state,
                        const SlotOccurrence *shifted = nullptr, double shift = 0.0) {
    if (state.qubits() != c.qubits()) throw PreconditionViolation("state and circuit qubit counts differ");
    if (static_cast<int>(params.size()) < c.n_params()) throw PreconditionViolation("too few parameters for circuit");
    for (std::size_t gi = 0; gi < c.gates().size(); ++gi) {
        const Gate &g = c.gates()[gi];
        double angles[3] = {0, 0, 0};
        for (std::size_t k = 0; k < g.slots.size(); ++k) {
            angles[k] = params[static_cast<std::size_t>(g.slots[k])];
            if (shifted && shifted->gate == gi && shifted->position == k) angles[k] += shift;
        }
        apply_gate_angles(state, g, std::span<const double>(angles, g.slots.size()));
    }
}

/// Dense unitary of the circuit, column b = circuit applied to |b>.
inline DenseOperator circuit_unitary(const Circuit &c, std::span<const double> params,
                                     int max_qubits = kDefaultMaxDenseQubits) {
    check_dense_cap(c.qubits(), max_qubits);
    const std::size_t dim = std::size_t{1} << c.qubits();
    DenseOperator u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t b = 0; b < dim; ++b) {
        StateVector s = StateVector::basis(c.qubits(), b);
        run_circuit(c, params, s);
        for (std::size_t r = 0; r < dim; ++r) u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b)) = s[r];
    }
    return u;
}

}  // namespace symlie
