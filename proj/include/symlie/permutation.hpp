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
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symlie/combinatorics.hpp"
#include "symlie/dense.hpp"
#include "symlie/errors.hpp"
#include "symlie/group_spec.hpp"

namespace symlie {

/// Bijection on {0, ..., N-1} stored as its image array.
///
/// Products compose left to right: (a * b)(j) = b(a(j)). With this convention
/// both the tuple action and the qubit matrices below are homomorphisms:
/// U_{a*b} = U_a U_b.
class Permutation {
  public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_) {
            if (v < 0 || static_cast<size_t>(v) >= images_.size() || seen[static_cast<size_t>(v)]) {
                throw InvalidSpec("image array is not a bijection");
            }
            seen[static_cast<size_t>(v)] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> im(static_cast<size_t>(n));
        std::iota(im.begin(), im.end(), 0);
        return Permutation(std::move(im));
    }

    /// The cycle c[0] -> c[1] -> ... -> c[0] on n symbols.
    static Permutation cycle(int n, std::initializer_list<int> c) { return cycle(n, std::vector<int>(c)); }
    static Permutation cycle(int n, const std::vector<int> &c) {
        std::vector<int> im(static_cast<size_t>(n));
        std::iota(im.begin(), im.end(), 0);
        for (size_t i = 0; i < c.size(); ++i) im[static_cast<size_t>(c[i])] = c[(i + 1) % c.size()];
        return Permutation(std::move(im));
    }

    int degree() const noexcept { return static_cast<int>(images_.size()); }
    int operator()(int j) const { return images_[static_cast<size_t>(j)]; }
    const std::vector<int> &images() const noexcept { return images_; }

    bool is_identity() const {
        for (size_t i = 0; i < images_.size(); ++i)
            if (images_[i] != static_cast<int>(i)) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<int> inv(images_.size());
        for (size_t i = 0; i < images_.size(); ++i) inv[static_cast<size_t>(images_[i])] = static_cast<int>(i);
        return Permutation(std::move(inv));
    }

    friend Permutation operator*(const Permutation &a, const Permutation &b) {
        if (a.degree() != b.degree()) throw PreconditionViolation("permutation degree mismatch");
        std::vector<int> out(a.images_.size());
        for (size_t j = 0; j < out.size(); ++j) out[j] = b(a.images_[j]);
        return Permutation(std::move(out));
    }

    bool is_even() const {
        std::vector<bool> seen(images_.size(), false);
        int transpositions = 0;
        for (size_t s = 0; s < images_.size(); ++s) {
            if (seen[s]) continue;
            int len = 0;
            for (size_t j = s; !seen[j]; j = static_cast<size_t>(images_[j])) {
                seen[j] = true;
                ++len;
            }
            transpositions += len - 1;
        }
        return transpositions % 2 == 0;
    }

    /// Places this permutation on symbols [offset, offset + degree) of a larger set.
    Permutation embedded(int total, int offset) const {
        std::vector<int> im(static_cast<size_t>(total));
        std::iota(im.begin(), im.end(), 0);
        for (size_t j = 0; j < images_.size(); ++j) im[j + static_cast<size_t>(offset)] = images_[j] + offset;
        return Permutation(std::move(im));
    }

    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < images_.size(); ++i) s += (i ? "," : "") + std::to_string(images_[i]);
        return s + "]";
    }

    friend bool operator==(const Permutation &, const Permutation &) = default;
    friend auto operator<=>(const Permutation &, const Permutation &) = default;

  private:
    std::vector<int> images_;
};

struct GroupElements {
    ProductGroupSpec spec;
    std::vector<Permutation> elements;
};

inline constexpr std::uint64_t kDefaultOrderCap = 1'000'000;
inline constexpr std::uint64_t kDefaultStateSpaceCap = 16'777'216;  // 4^12

namespace detail {

inline std::vector<Permutation> family_elements(const GroupSpec &g) {
    const int n = g.size;
    std::vector<Permutation> out;
    switch (g.family) {
    case Family::Trivial: out.push_back(Permutation::identity(n)); break;
    case Family::Cyclic:
        for (int k = 0; k < n; ++k) {
            std::vector<int> im(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) im[static_cast<size_t>(j)] = (j + k) % n;
            out.emplace_back(std::move(im));
        }
        break;
    case Family::Dihedral:
        if (n <= 2) return family_elements(GroupSpec(Family::Symmetric, n));
        for (int k = 0; k < n; ++k) {
            std::vector<int> rot(static_cast<size_t>(n)), ref(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) {
                rot[static_cast<size_t>(j)] = (j + k) % n;
                ref[static_cast<size_t>(j)] = ((k - j) % n + n) % n;
            }
            out.emplace_back(std::move(rot));
            out.emplace_back(std::move(ref));
        }
        break;
    case Family::Symmetric:
    case Family::Alternating: {
        std::vector<int> im(static_cast<size_t>(n));
        std::iota(im.begin(), im.end(), 0);
        do {
            Permutation p(im);
            if (g.family == Family::Symmetric || p.is_even()) out.push_back(std::move(p));
        } while (std::next_permutation(im.begin(), im.end()));
        break;
    }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Generators of one family on n symbols; empty for trivial groups.
inline std::vector<Permutation> family_generators(const GroupSpec &g) {
    const int n = g.size;
    std::vector<int> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    std::vector<Permutation> gens;
    if (n < 2 || g.family == Family::Trivial) return gens;
    switch (g.family) {
    case Family::Symmetric:
        gens.push_back(Permutation::cycle(n, {0, 1}));
        if (n > 2) gens.push_back(Permutation::cycle(n, all));
        break;
    case Family::Alternating:
        if (n < 3) break;
        gens.push_back(Permutation::cycle(n, {0, 1, 2}));
        if (n > 3) {
            // (0 1 2) with the N-cycle (N odd) or the (N-1)-cycle on 1..N-1 (N even) generates A_N.
            if (n % 2 == 1) {
                gens.push_back(Permutation::cycle(n, all));
            } else {
                gens.push_back(Permutation::cycle(n, std::vector<int>(all.begin() + 1, all.end())));
            }
        }
        break;
    case Family::Dihedral: {
        gens.push_back(Permutation::cycle(n, all));
        std::vector<int> ref(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) ref[static_cast<size_t>(j)] = (n - j) % n;
        Permutation r(std::move(ref));
        if (!r.is_identity()) gens.push_back(std::move(r));
        break;
    }
    case Family::Cyclic: gens.push_back(Permutation::cycle(n, all)); break;
    case Family::Trivial: break;
    }
    return gens;
}

}  // namespace detail

/// Generators of the (product) group, each acting on all N symbols.
inline std::vector<Permutation> generators(const ProductGroupSpec &spec) {
    const int total = spec.degree();
    std::vector<Permutation> gens;
    int offset = 0;
    for (const auto &part : spec.parts()) {
        for (const auto &g : detail::family_generators(part)) gens.push_back(g.embedded(total, offset));
        offset += part.size;
    }
    return gens;
}

/// Every element of the group, sorted by image array. Throws OrderCapExceeded
/// before doing any work if the group order is above `order_cap`.
inline GroupElements enumerate_elements(const ProductGroupSpec &spec, std::uint64_t order_cap = kDefaultOrderCap) {
    BigInt order = group_order(spec);
    if (order > order_cap) throw OrderCapExceeded(order.str(), std::to_string(order_cap));
    const int total = spec.degree();
    std::vector<Permutation> acc{Permutation::identity(total)};
    int offset = 0;
    for (const auto &part : spec.parts()) {
        std::vector<Permutation> next;
        for (const auto &local : detail::family_elements(part)) {
            Permutation emb = local.embedded(total, offset);
            for (const auto &a : acc) next.push_back(a * emb);
        }
        acc = std::move(next);
        offset += part.size;
    }
    std::sort(acc.begin(), acc.end());
    return GroupElements{spec, std::move(acc)};
}

/// Output position j holds t[p(j)].
template <typename T>
std::vector<T> apply_to_tuple(const Permutation &p, std::span<const T> t) {
    if (static_cast<int>(t.size()) != p.degree()) throw PreconditionViolation("tuple length does not match permutation degree");
    std::vector<T> out(t.size());
    for (size_t j = 0; j < t.size(); ++j) out[j] = t[static_cast<size_t>(p(static_cast<int>(j)))];
    return out;
}

template <typename T>
std::vector<T> apply_to_tuple(const Permutation &p, const std::vector<T> &t) {
    return apply_to_tuple(p, std::span<const T>(t));
}

/// Words of length n over k letters, indexed lexicographically (position 0 most significant).
class WordSpace {
  public:
    WordSpace(int n, int k, std::uint64_t cap) : n_(n), k_(k) {
        if (n < 1 || k < 1) throw PreconditionViolation("word space needs n >= 1 and k >= 1");
        size_ = 1;
        for (int i = 0; i < n; ++i) {
            if (size_ > cap / static_cast<std::uint64_t>(k)) {
                throw StateSpaceCapExceeded("state space " + std::to_string(k) + "^" + std::to_string(n) +
                                            " exceeds cap " + std::to_string(cap));
            }
            size_ *= static_cast<std::uint64_t>(k);
        }
    }

    int length() const noexcept { return n_; }
    int alphabet() const noexcept { return k_; }
    std::uint64_t size() const noexcept { return size_; }

    void decode(std::uint64_t index, std::span<std::uint8_t> out) const {
        for (int j = n_ - 1; j >= 0; --j) {
            out[static_cast<size_t>(j)] = static_cast<std::uint8_t>(index % static_cast<std::uint64_t>(k_));
            index /= static_cast<std::uint64_t>(k_);
        }
    }

    std::uint64_t encode(std::span<const std::uint8_t> word) const {
        std::uint64_t idx = 0;
        for (int j = 0; j < n_; ++j) idx = idx * static_cast<std::uint64_t>(k_) + word[static_cast<size_t>(j)];
        return idx;
    }

    std::vector<std::uint8_t> word(std::uint64_t index) const {
        std::vector<std::uint8_t> w(static_cast<size_t>(n_));
        decode(index, w);
        return w;
    }

    std::uint64_t act(const Permutation &p, std::uint64_t index) const {
        std::uint8_t in[64], out[64];
        decode(index, std::span<std::uint8_t>(in, static_cast<size_t>(n_)));
        for (int j = 0; j < n_; ++j) out[j] = in[p(j)];
        return encode(std::span<const std::uint8_t>(out, static_cast<size_t>(n_)));
    }

  private:
    int n_;
    int k_;
    std::uint64_t size_ = 0;
};

/// Visits every orbit of {0..k-1}^N under the group, in increasing order of
/// the orbit's lexicographic minimum. Orbits are closed under the generators
/// by a flood fill; a word starts a new orbit iff no smaller word reached it,
/// so it is the minimum of its orbit. `visit` receives the sorted member indices.
template <typename Visitor>
void scan_orbits(const ProductGroupSpec &spec, int k, std::uint64_t space_cap, Visitor &&visit) {
    if (spec.degree() > 64) throw PreconditionViolation("words longer than 64 are not supported");
    WordSpace space(spec.degree(), k, space_cap);
    const auto gens = generators(spec);
    std::vector<bool> seen(space.size(), false);
    std::vector<std::uint64_t> members, stack;
    for (std::uint64_t start = 0; start < space.size(); ++start) {
        if (seen[start]) continue;
        members.clear();
        stack.assign(1, start);
        seen[start] = true;
        while (!stack.empty()) {
            std::uint64_t cur = stack.back();
            stack.pop_back();
            members.push_back(cur);
            for (const auto &g : gens) {
                std::uint64_t nxt = space.act(g, cur);
                if (!seen[nxt]) {
                    seen[nxt] = true;
                    stack.push_back(nxt);
                }
            }
        }
        std::sort(members.begin(), members.end());
        visit(space, std::as_const(members));
    }
}

/// Number of orbits of {0..k-1}^N under the group, by exhaustive scan.
inline std::uint64_t count_orbits_bruteforce(const ProductGroupSpec &spec, int k,
                                             std::uint64_t space_cap = kDefaultStateSpaceCap) {
    std::uint64_t count = 0;
    scan_orbits(spec, k, space_cap, [&](const WordSpace &, const std::vector<std::uint64_t> &) { ++count; });
    return count;
}

/// Basis-index image of every computational basis state under U_p: the output
/// state's qubit j carries the input's qubit p(j).
inline std::vector<std::uint64_t> qubit_permutation_indices(const Permutation &p) {
    const int n = p.degree();
    if (n > 30) throw DimensionCapExceeded("qubit permutation index map limited to 30 qubits");
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<std::uint64_t> map(dim);
    for (std::uint64_t b = 0; b < dim; ++b) {
        std::uint64_t out = 0;
        for (int j = 0; j < n; ++j) {
            std::uint64_t bit = (b >> qubit_bit(n, p(j))) & 1U;
            out |= bit << qubit_bit(n, j);
        }
        map[b] = out;
    }
    return map;
}

/// 0/1 unitary U_p with U_p (s_1 x ... x s_N) U_p^dagger = s_{p(1)} x ... x s_{p(N)}.
inline DenseOperator qubit_permutation_matrix(const Permutation &p, int max_qubits = kDefaultMaxDenseQubits) {
    check_dense_cap(p.degree(), max_qubits);
    const auto map = qubit_permutation_indices(p);
    const auto dim = static_cast<Eigen::Index>(map.size());
    DenseOperator u = DenseOperator::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) u(static_cast<Eigen::Index>(map[static_cast<size_t>(b)]), b) = 1.0;
    return u;
}

}  // namespace symlie
