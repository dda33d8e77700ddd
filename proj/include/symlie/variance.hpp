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
#include <memory>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symlie/errors.hpp"
#include "symlie/parallel.hpp"
#include "symlie/rng.hpp"
#include "symlie/statevector.hpp"

namespace symlie {

// ---------------------------------------------------------------------------
// Graph data

struct Graph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;
};

/// Union-find connectivity. The graph on zero or one vertex counts as connected.
inline bool is_connected(const Graph &g) {
    std::vector<int> parent(static_cast<std::size_t>(g.vertices));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    int components = g.vertices;
    for (auto [a, b] : g.edges) {
        int ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[static_cast<std::size_t>(ra)] = rb;
            --components;
        }
    }
    return components <= 1;
}

/// G(n, p): every pair i < j, in lexicographic order, is an edge with probability p.
inline Graph erdos_renyi(int n, double p, Rng &rng) {
    Graph g{n, {}};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p) g.edges.emplace_back(i, j);
    return g;
}

/// prod_{(a,b) in E} CZ_{ab} |+>^n.
inline StateVector graph_state(const Graph &g) {
    const int n = g.vertices;
    std::vector<std::pair<int, int>> seen;
    for (auto [a, b] : g.edges) {
        if (a == b || a < 0 || b < 0 || a >= n || b >= n) throw PreconditionViolation("graph edge out of range or a loop");
        const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) throw PreconditionViolation("graph has a repeated edge");
        seen.push_back(key);
    }
    const double amp = std::pow(2.0, -0.5 * n);
    std::vector<Complex> v(std::size_t{1} << n, Complex(amp));
    StateVector s(n, std::move(v));
    for (auto [a, b] : g.edges) kernels::cz(s, a, b);
    return s;
}

// ---------------------------------------------------------------------------
// Observable and loss

/// <psi| Z^{x n} |psi> = sum_b (-1)^{popcount b} |psi_b|^2.
inline double expectation_parity(const StateVector &s) {
    double e = 0.0;
    for (std::size_t b = 0; b < s.size(); ++b) e += (std::popcount(b) % 2 ? -1.0 : 1.0) * std::norm(s[b]);
    return e;
}

struct LabeledState {
    StateVector state;
    double label = 1.0;
};

using Dataset = std::vector<LabeledState>;

namespace detail {

inline void check_labels(const Dataset &data) {
    if (data.empty()) throw PreconditionViolation("dataset is empty");
    for (const auto &d : data)
        if (d.label != 1.0 && d.label != -1.0) throw PreconditionViolation("labels must be +1 or -1");
}

inline double circuit_expectation(const Circuit &c, std::span<const double> params, const StateVector &input,
                                  const SlotOccurrence *shifted = nullptr, double shift = 0.0) {
    StateVector s = input;
    run_circuit(c, params, s, shifted, shift);
    return expectation_parity(s);
}

}  // namespace detail

/// Mean over the dataset of (<Z^n> - y)^2.
inline double mse_loss(const Circuit &c, std::span<const double> params, const Dataset &data) {
    detail::check_labels(data);
    double total = 0.0;
    for (const auto &d : data) {
        const double e = detail::circuit_expectation(c, params, d.state);
        total += (e - d.label) * (e - d.label);
    }
    return total / static_cast<double>(data.size());
}

inline double mse_loss(const Circuit &c, const std::vector<double> &params, const Dataset &data) {
    return mse_loss(c, std::span<const double>(params), data);
}

/// d(mse_loss)/d(theta_slot) by the parameter-shift rule. Every gate generator
/// here is P/2 for a Pauli string P, so each occurrence contributes
/// (f(+pi/2) - f(-pi/2)) / 2; occurrences of a shared slot are summed.
inline double gradient(const Circuit &c, std::span<const double> params, const Dataset &data, int slot) {
    if (slot < 0 || slot >= c.n_params()) throw PreconditionViolation("slot out of range");
    detail::check_labels(data);
    const auto occ = slot_occurrences(c, slot);
    const double shift = std::numbers::pi / 2;
    double total = 0.0;
    for (const auto &d : data) {
        const double e = detail::circuit_expectation(c, params, d.state);
        double de = 0.0;
        for (const auto &o : occ) {
            de += 0.5 * (detail::circuit_expectation(c, params, d.state, &o, shift) -
                         detail::circuit_expectation(c, params, d.state, &o, -shift));
        }
        total += 2.0 * (e - d.label) * de;
    }
    return total / static_cast<double>(data.size());
}

inline double gradient(const Circuit &c, const std::vector<double> &params, const Dataset &data, int slot) {
    return gradient(c, std::span<const double>(params), data, slot);
}

/// Central finite difference of mse_loss in one slot.
inline double finite_difference_gradient(const Circuit &c, std::vector<double> params, const Dataset &data, int slot,
                                         double h = 1e-5) {
    const double base = params.at(static_cast<std::size_t>(slot));
    params[static_cast<std::size_t>(slot)] = base + h;
    const double up = mse_loss(c, params, data);
    params[static_cast<std::size_t>(slot)] = base - h;
    const double down = mse_loss(c, params, data);
    return (up - down) / (2 * h);
}

// ---------------------------------------------------------------------------
// Adjoint differentiation

/// Circuit lowered to primitive operations for reverse-mode gradients.
///
/// ROT3 is split into its three rotations and each maximal run of ZZ gates on
/// one slot becomes a single diagonal op exp(-i theta/2 c(b)) with
/// c(b) = sum_edges z_i z_j. The gradient of every slot comes out of one
/// forward and one backward sweep; `gradient` is the independent reference.
class AdjointProgram {
  public:
    explicit AdjointProgram(const Circuit &c) : n_(c.qubits()), n_params_(c.n_params()) {
        const auto &gates = c.gates();
        for (std::size_t gi = 0; gi < gates.size(); ++gi) {
            const Gate &g = gates[gi];
            switch (g.kind) {
            case GateKind::RX: ops_.push_back({OpType::Rx, g.qubits[0], 0, g.slots[0], nullptr}); break;
            case GateKind::RY: ops_.push_back({OpType::Ry, g.qubits[0], 0, g.slots[0], nullptr}); break;
            case GateKind::RZ: ops_.push_back({OpType::Rz, g.qubits[0], 0, g.slots[0], nullptr}); break;
            case GateKind::ROT3:
                ops_.push_back({OpType::Rz, g.qubits[0], 0, g.slots[0], nullptr});
                ops_.push_back({OpType::Ry, g.qubits[0], 0, g.slots[1], nullptr});
                ops_.push_back({OpType::Rz, g.qubits[0], 0, g.slots[2], nullptr});
                break;
            case GateKind::CZ: ops_.push_back({OpType::Cz, g.qubits[0], g.qubits[1], -1, nullptr}); break;
            case GateKind::CNOT: ops_.push_back({OpType::Cnot, g.qubits[0], g.qubits[1], -1, nullptr}); break;
            case GateKind::H: ops_.push_back({OpType::H, g.qubits[0], 0, -1, nullptr}); break;
            case GateKind::ZZ: {
                std::size_t end = gi;
                while (end + 1 < gates.size() && gates[end + 1].kind == GateKind::ZZ && gates[end + 1].slots[0] == g.slots[0]) ++end;
                ops_.push_back({OpType::Diag, 0, 0, g.slots[0], make_diag(gates, gi, end)});
                gi = end;
                break;
            }
            }
        }
    }

    int qubits() const noexcept { return n_; }
    int n_params() const noexcept { return n_params_; }

    void forward(StateVector &s, std::span<const double> params) const {
        for (const auto &op : ops_) apply(s, op, params, +1.0);
    }

    /// Expectation of Z^n for `input`, and d<Z^n>/d(theta) for every slot added into `grad`.
    double expectation_and_gradient(const StateVector &input, std::span<const double> params, std::span<double> grad) const {
        StateVector phi = input;
        forward(phi, params);
        StateVector lam = phi;
        for (std::size_t b = 0; b < lam.size(); ++b)
            if (std::popcount(b) % 2) lam[b] = -lam[b];
        double value = 0.0;
        for (std::size_t b = 0; b < phi.size(); ++b) value += std::real(std::conj(phi[b]) * lam[b]);
        for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
            if (it->slot >= 0) grad[static_cast<std::size_t>(it->slot)] += 2.0 * generator_overlap(lam, phi, *it).imag();
            apply(phi, *it, params, -1.0);
            apply(lam, *it, params, -1.0);
        }
        return value;
    }

    /// d(mse)/d(theta) for all slots.
    std::vector<double> loss_gradient(std::span<const double> params, const Dataset &data) const {
        detail::check_labels(data);
        std::vector<double> total(static_cast<std::size_t>(n_params_), 0.0), g(total.size());
        for (const auto &d : data) {
            std::fill(g.begin(), g.end(), 0.0);
            const double e = expectation_and_gradient(d.state, params, g);
            for (std::size_t k = 0; k < g.size(); ++k) total[k] += 2.0 * (e - d.label) * g[k];
        }
        for (auto &t : total) t /= static_cast<double>(data.size());
        return total;
    }

  private:
    enum class OpType { Rx, Ry, Rz, Diag, Cnot, Cz, H };

    struct DiagTable {
        std::vector<std::int16_t> coeff;  // c(b)
        int max_abs = 0;
    };

    struct Op {
        OpType type;
        int q0;
        int q1;
        int slot;
        std::shared_ptr<const DiagTable> diag;
    };

    std::shared_ptr<const DiagTable> make_diag(const std::vector<Gate> &gates, std::size_t first, std::size_t last) {
        auto t = std::make_shared<DiagTable>();
        const std::size_t dim = std::size_t{1} << n_;
        t->coeff.assign(dim, 0);
        t->max_abs = static_cast<int>(last - first + 1);
        for (std::size_t gi = first; gi <= last; ++gi) {
            const std::size_t ma = std::size_t{1} << qubit_bit(n_, gates[gi].qubits[0]);
            const std::size_t mb = std::size_t{1} << qubit_bit(n_, gates[gi].qubits[1]);
            for (std::size_t b = 0; b < dim; ++b) t->coeff[b] = static_cast<std::int16_t>(t->coeff[b] + ((((b & ma) != 0) == ((b & mb) != 0)) ? 1 : -1));
        }
        return t;
    }

    static void apply(StateVector &s, const Op &op, std::span<const double> params, double sign) {
        const double theta = op.slot >= 0 ? sign * params[static_cast<std::size_t>(op.slot)] : 0.0;
        switch (op.type) {
        case OpType::Rx: kernels::rx(s, op.q0, theta); break;
        case OpType::Ry: kernels::ry(s, op.q0, theta); break;
        case OpType::Rz: kernels::rz(s, op.q0, theta); break;
        case OpType::Cnot: kernels::cnot(s, op.q0, op.q1); break;
        case OpType::Cz: kernels::cz(s, op.q0, op.q1); break;
        case OpType::H: kernels::hadamard(s, op.q0); break;
        case OpType::Diag: {
            const int m = op.diag->max_abs;
            std::vector<Complex> phase(static_cast<std::size_t>(2 * m + 1));
            for (int c = -m; c <= m; ++c) phase[static_cast<std::size_t>(c + m)] = std::polar(1.0, -theta * c / 2);
            auto a = s.amplitudes();
            for (std::size_t b = 0; b < a.size(); ++b) a[b] *= phase[static_cast<std::size_t>(op.diag->coeff[b] + m)];
            break;
        }
        }
    }

    /// <lam| G |phi> where the op is exp(-i theta G).
    static Complex generator_overlap(const StateVector &lam, const StateVector &phi, const Op &op) {
        Complex acc = 0.0;
        const Complex iu(0.0, 1.0);
        if (op.type == OpType::Diag) {
            for (std::size_t b = 0; b < phi.size(); ++b) acc += std::conj(lam[b]) * phi[b] * static_cast<double>(op.diag->coeff[b]);
            return 0.5 * acc;
        }
        const std::size_t m = phi.mask(op.q0);
        for (std::size_t i = 0; i < phi.size(); ++i) {
            if (i & m) continue;
            const std::size_t j = i | m;
            switch (op.type) {
            case OpType::Rx: acc += std::conj(lam[i]) * phi[j] + std::conj(lam[j]) * phi[i]; break;
            case OpType::Ry: acc += std::conj(lam[i]) * (-iu * phi[j]) + std::conj(lam[j]) * (iu * phi[i]); break;
            case OpType::Rz: acc += std::conj(lam[i]) * phi[i] - std::conj(lam[j]) * phi[j]; break;
            default: break;
            }
        }
        return 0.5 * acc;
    }

    int n_;
    int n_params_;
    std::vector<Op> ops_;
};

// ---------------------------------------------------------------------------
// Ansatz families

enum class AnsatzKind { PermutationSymmetric, CyclicSymmetric, StronglyEntangling };

inline const char *ansatz_name(AnsatzKind k) {
    switch (k) {
    case AnsatzKind::PermutationSymmetric: return "permutation";
    case AnsatzKind::CyclicSymmetric: return "cyclic";
    case AnsatzKind::StronglyEntangling: return "strongly_entangling";
    }
    return "?";
}

inline AnsatzKind ansatz_from_name(const std::string &s) {
    if (s == "permutation" || s == "perm" || s == "S") return AnsatzKind::PermutationSymmetric;
    if (s == "cyclic" || s == "C") return AnsatzKind::CyclicSymmetric;
    if (s == "strongly_entangling" || s == "strongly" || s == "se") return AnsatzKind::StronglyEntangling;
    throw InvalidSpec("unknown ansatz '" + s + "' (permutation, cyclic, strongly_entangling)");
}

struct AnsatzOptions {
    /// Cyclic ansatz: include the distance-2 ring of ZZ gates with its own slot.
    bool cyclic_theta4 = true;
    /// Strongly entangling ansatz: every layer ends with a CNOT ring of range 1
    /// followed by one of range 2. When false, each layer has a single ring whose
    /// range cycles through 1, 2, ..., n-1 from layer to layer.
    bool double_cnot_ring = true;
};

/// Unordered pairs {i, (i + d) mod n}, first occurrence order, no self pairs.
inline std::vector<std::pair<int, int>> ring_pairs(int n, int d) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i) {
        int j = (i + d) % n;
        if (i == j) continue;
        const std::pair<int, int> key{std::min(i, j), std::max(i, j)};
        auto same = [&](std::pair<int, int> p) { return std::pair<int, int>{std::min(p.first, p.second), std::max(p.first, p.second)} == key; };
        if (std::find_if(out.begin(), out.end(), same) == out.end()) {
            out.emplace_back(i, j);
        }
    }
    return out;
}

inline int slots_per_layer(AnsatzKind kind, int n, const AnsatzOptions &opt = {}) {
    switch (kind) {
    case AnsatzKind::PermutationSymmetric: return 3;
    case AnsatzKind::CyclicSymmetric: return (opt.cyclic_theta4 && !ring_pairs(n, 2).empty()) ? 4 : 3;
    case AnsatzKind::StronglyEntangling: return 3 * n;
    }
    return 0;
}

/// Layer count giving about `target_slots` parameters (within one layer).
inline int layers_for(AnsatzKind kind, int n, int target_slots, const AnsatzOptions &opt = {}) {
    const int per = slots_per_layer(kind, n, opt);
    return std::max(1, (target_slots + per - 1) / per);
}

/// Layered ansatz; parameters are shared within a layer as described per kind
/// and never between layers.
inline Circuit build_ansatz(AnsatzKind kind, int n, int layers, const AnsatzOptions &opt = {}) {
    if (n < 2) throw PreconditionViolation("ansatz needs n >= 2 qubits");
    if (layers < 1) throw PreconditionViolation("ansatz needs at least one layer");
    Circuit c(n);
    const int per = slots_per_layer(kind, n, opt);
    for (int l = 0; l < layers; ++l) {
        const int s = l * per;
        switch (kind) {
        case AnsatzKind::PermutationSymmetric:
            for (int q = 0; q < n; ++q) c.add(GateKind::RX, {q}, {s});
            for (int q = 0; q < n; ++q) c.add(GateKind::RY, {q}, {s + 1});
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) c.add(GateKind::ZZ, {i, j}, {s + 2});
            break;
        case AnsatzKind::CyclicSymmetric:
            for (int q = 0; q < n; ++q) c.add(GateKind::RX, {q}, {s});
            for (int q = 0; q < n; ++q) c.add(GateKind::RY, {q}, {s + 1});
            for (auto [a, b] : ring_pairs(n, 1)) c.add(GateKind::ZZ, {a, b}, {s + 2});
            if (per == 4)
                for (auto [a, b] : ring_pairs(n, 2)) c.add(GateKind::ZZ, {a, b}, {s + 3});
            break;
        case AnsatzKind::StronglyEntangling: {
            for (int q = 0; q < n; ++q) c.add(GateKind::ROT3, {q}, {s + 3 * q, s + 3 * q + 1, s + 3 * q + 2});
            auto ring = [&](int range) {
                for (int q = 0; q < n; ++q)
                    if ((q + range) % n != q) c.add(GateKind::CNOT, {q, (q + range) % n});
            };
            if (opt.double_cnot_ring) {
                ring(1);
                ring(2);
            } else {
                ring(l % (n - 1) + 1);
            }
            break;
        }
        }
    }
    c.validate();
    return c;
}

/// First slot of layer ceil(L/2) (1-based), a parameter in the middle of the circuit.
inline int probe_slot(AnsatzKind kind, int n, int layers, const AnsatzOptions &opt = {}) {
    return ((layers + 1) / 2 - 1) * slots_per_layer(kind, n, opt);
}

// ---------------------------------------------------------------------------
// Variance experiment

enum class GradientMethod { Adjoint, ParameterShift };

struct ExperimentConfig {
    int min_qubits = 4;
    int max_qubits = 10;
    int qubit_step = 2;
    int samples_per_point = 200;
    int dataset_size = 50;
    double edge_probability = 0.4;
    double param_low = -2 * std::numbers::pi;
    double param_high = 2 * std::numbers::pi;
    std::uint64_t seed = 0;
    std::vector<AnsatzKind> ansatzes{AnsatzKind::PermutationSymmetric, AnsatzKind::CyclicSymmetric,
                                     AnsatzKind::StronglyEntangling};
    /// Fixed layer count for every ansatz; 0 picks layers_for(kind, n, 6n).
    int layers = 0;
    AnsatzOptions ansatz_options;
    /// Report every slot instead of only the probe slot.
    bool all_slots = false;
    GradientMethod method = GradientMethod::Adjoint;
    unsigned workers = 0;  // 0 = worker_count()
    int dataset_retry_cap = 10'000;

    void validate() const {
        if (min_qubits < 2 || max_qubits < min_qubits || qubit_step < 1) throw PreconditionViolation("bad qubit range");
        if (max_qubits > 24) throw PreconditionViolation("qubit range above 24 is not supported");
        if (samples_per_point < 2) throw PreconditionViolation("samples_per_point must be >= 2 for an unbiased variance");
        if (dataset_size < 2) throw PreconditionViolation("dataset_size must be >= 2");
        if (!(edge_probability > 0.0 && edge_probability < 1.0)) throw PreconditionViolation("edge probability must lie in (0, 1)");
        if (!(param_low < param_high)) throw PreconditionViolation("empty parameter range");
        if (layers < 0) throw PreconditionViolation("layers must be >= 0");
        if (ansatzes.empty()) throw PreconditionViolation("no ansatz selected");
    }
};

struct VarianceRow {
    int qubits = 0;
    AnsatzKind ansatz = AnsatzKind::PermutationSymmetric;
    int slot = 0;
    int layers = 0;
    int n_params = 0;
    double variance = 0.0;
    double mean = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
};

/// Balanced dataset of graph states: ceil(M/2) connected graphs labeled +1 and
/// floor(M/2) disconnected ones labeled -1, drawn from G(n, p) by per-class
/// rejection. Throws DatasetGenerationFailed after `retry_cap` draws.
inline Dataset make_graph_dataset(int n, int size, double p, std::uint64_t seed, int retry_cap = 10'000) {
    Rng rng(seed);
    const int want_pos = (size + 1) / 2, want_neg = size / 2;
    int pos = 0, neg = 0;
    Dataset connected, disconnected;
    for (int draw = 0; pos < want_pos || neg < want_neg; ++draw) {
        if (draw >= retry_cap) {
            throw DatasetGenerationFailed("could not balance graph classes for n=" + std::to_string(n) + " within " +
                                          std::to_string(retry_cap) + " draws");
        }
        Graph g = erdos_renyi(n, p, rng);
        if (is_connected(g)) {
            if (pos < want_pos) {
                connected.push_back({graph_state(g), 1.0});
                ++pos;
            }
        } else if (neg < want_neg) {
            disconnected.push_back({graph_state(g), -1.0});
            ++neg;
        }
    }
    Dataset out;
    for (int i = 0; i < std::max(want_pos, want_neg); ++i) {
        if (i < want_pos) out.push_back(std::move(connected[static_cast<std::size_t>(i)]));
        if (i < want_neg) out.push_back(std::move(disconnected[static_cast<std::size_t>(i)]));
    }
    return out;
}

/// Unbiased sample variance and mean, accumulated in index order.
inline std::pair<double, double> sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) throw PreconditionViolation("variance needs at least two samples");
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {ss / static_cast<double>(xs.size() - 1), mean};
}

/// Gradient variance table. Sample i of (n, ansatz) draws its parameters from a
/// child stream seeded by (seed, n, ansatz, i), so results do not depend on the
/// worker count.
inline std::vector<VarianceRow> run_variance_experiment(const ExperimentConfig &cfg) {
    cfg.validate();
    const unsigned workers = cfg.workers ? cfg.workers : worker_count();
    std::vector<VarianceRow> rows;
    for (int n = cfg.min_qubits; n <= cfg.max_qubits; n += cfg.qubit_step) {
        const Dataset data = make_graph_dataset(n, cfg.dataset_size, cfg.edge_probability,
                                                derive_seed(cfg.seed, static_cast<std::uint64_t>(n), 0xDA7A),
                                                cfg.dataset_retry_cap);
        for (AnsatzKind kind : cfg.ansatzes) {
            const int layers = cfg.layers ? cfg.layers : layers_for(kind, n, 6 * n, cfg.ansatz_options);
            const Circuit circuit = build_ansatz(kind, n, layers, cfg.ansatz_options);
            const AdjointProgram program(circuit);
            const int probe = probe_slot(kind, n, layers, cfg.ansatz_options);
            const std::size_t n_params = static_cast<std::size_t>(circuit.n_params());
            const std::size_t samples = static_cast<std::size_t>(cfg.samples_per_point);
            // grads[i * width + k]: slot k (or the probe) of sample i
            const std::size_t width = cfg.all_slots ? n_params : 1;
            std::vector<double> grads(samples * width);
            parallel_for(samples, workers, [&](std::size_t i) {
                Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(kind) + 1, i));
                std::vector<double> params(n_params);
                for (auto &p : params) p = rng.uniform(cfg.param_low, cfg.param_high);
                if (cfg.method == GradientMethod::Adjoint) {
                    const auto g = program.loss_gradient(params, data);
                    if (cfg.all_slots) {
                        std::copy(g.begin(), g.end(), grads.begin() + static_cast<std::ptrdiff_t>(i * width));
                    } else {
                        grads[i] = g[static_cast<std::size_t>(probe)];
                    }
                } else if (cfg.all_slots) {
                    for (std::size_t k = 0; k < n_params; ++k) grads[i * width + k] = gradient(circuit, params, data, static_cast<int>(k));
                } else {
                    grads[i] = gradient(circuit, params, data, probe);
                }
            });
            const std::size_t reported = cfg.all_slots ? n_params : 1;
            for (std::size_t k = 0; k < reported; ++k) {
                std::vector<double> column(samples);
                for (std::size_t i = 0; i < samples; ++i) column[i] = grads[i * width + k];
                auto [var, mean] = sample_variance(column);
                rows.push_back(VarianceRow{n, kind, cfg.all_slots ? static_cast<int>(k) : probe, layers,
                                           circuit.n_params(), var, mean, cfg.samples_per_point, cfg.seed});
            }
        }
    }
    return rows;
}

}  // namespace symlie
