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

// Command implementations for the symlie executable. Every command writes data
// to `out` and diagnostics to `err`, so tests can run them in-process.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "symlie/symlie.hpp"

namespace symlie::cli {

enum class Format { Table, Csv, Json };

inline Format parse_format(const std::string &s) {
    if (s == "table") return Format::Table;
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw InvalidSpec("unknown format '" + s + "' (table, csv, json)");
}

/// Exact integer for JSON: a number when it fits in 64 bits, else a decimal string.
inline nlohmann::json big_to_json(const BigInt &v) {
    if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
    return v.str();
}

inline std::pair<int, int> parse_range(const std::string &s) {
    auto pos = s.find("..");
    if (pos == std::string::npos) throw InvalidSpec("range must look like A..B, got '" + s + "'");
    int a = std::stoi(s.substr(0, pos)), b = std::stoi(s.substr(pos + 2));
    if (a < 1 || b < a) throw InvalidSpec("bad range '" + s + "'");
    return {a, b};
}

inline std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty()) out.push_back(item);
    return out;
}

/// Space-aligned table with a header row.
inline void print_table(std::ostream &out, const std::vector<std::string> &header,
                        const std::vector<std::vector<std::string>> &rows) {
    std::vector<std::size_t> w(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) w[c] = header[c].size();
    for (const auto &r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) w[c] = std::max(w[c], r[c].size());
    auto line = [&](const std::vector<std::string> &r) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c) out << "  ";
            out << std::setw(static_cast<int>(w[c])) << r[c];
        }
        out << '\n';
    };
    line(header);
    for (const auto &r : rows) line(r);
}

inline void print_csv(std::ostream &out, const std::vector<std::string> &header,
                      const std::vector<std::vector<std::string>> &rows) {
    auto line = [&](const std::vector<std::string> &r) {
        for (std::size_t c = 0; c < r.size(); ++c) out << (c ? ";" : "") << r[c];
        out << '\n';
    };
    line(header);
    for (const auto &r : rows) line(r);
}

inline std::string fmt_double(double v) {
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

// ---------------------------------------------------------------------------

struct DimOptions {
    std::string spec;
    int alphabet = 4;
    std::string sweep;
    Format format = Format::Table;
};

/// Dimension of the invariant subalgebra for a group spec, or a sweep over N
/// where comma-separated specs become columns (`C,D,A,S,E` or `C:N-3xE:3`).
inline int cmd_dim(const DimOptions &o, std::ostream &out) {
    if (o.alphabet < 1) throw InvalidSpec("--alphabet must be >= 1");
    if (o.sweep.empty()) {
        const ProductGroupSpec spec = parse_group_spec(o.spec);
        const BigInt d = dim_product(spec, o.alphabet);
        switch (o.format) {
        case Format::Table: out << d << '\n'; break;
        case Format::Csv: print_csv(out, {"spec", "alphabet", "dimension"}, {{spec.str(), std::to_string(o.alphabet), d.str()}}); break;
        case Format::Json:
            out << nlohmann::json{{"spec", spec.str()}, {"alphabet", o.alphabet}, {"dimension", big_to_json(d)}}.dump(2) << '\n';
            break;
        }
        return 0;
    }
    const auto [lo, hi] = parse_range(o.sweep);
    const auto columns = split(o.spec, ',');
    if (columns.empty()) throw InvalidSpec("sweep needs at least one spec");
    std::vector<std::string> header{"N"};
    for (const auto &c : columns) header.push_back(c);
    std::vector<std::vector<std::string>> rows;
    nlohmann::json js = nlohmann::json::array();
    for (int n = lo; n <= hi; ++n) {
        std::vector<std::string> row{std::to_string(n)};
        nlohmann::json jrow{{"N", n}};
        for (const auto &c : columns) {
            try {
                const BigInt d = dim_product(parse_group_spec(c, &n), o.alphabet);
                row.push_back(d.str());
                jrow[c] = big_to_json(d);
            } catch (const InvalidSpec &) {
                // a size expression such as N-5 is below 1 for this N
                row.emplace_back("");
                jrow[c] = nullptr;
            }
        }
        rows.push_back(std::move(row));
        js.push_back(std::move(jrow));
    }
    switch (o.format) {
    case Format::Table: print_table(out, header, rows); break;
    case Format::Csv: print_csv(out, header, rows); break;
    case Format::Json: out << js.dump(2) << '\n'; break;
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct OrbitsOptions {
    std::string spec;
    bool count_only = false;
    std::uint64_t cap_space = kDefaultStateSpaceCap;
    Format format = Format::Table;
};

inline int cmd_orbits(const OrbitsOptions &o, std::ostream &out) {
    const ProductGroupSpec spec = parse_group_spec(o.spec);
    if (o.count_only) {
        const auto count = count_invariant_basis(spec, o.cap_space);
        if (o.format == Format::Json) {
            out << nlohmann::json{{"spec", spec.str()}, {"count", count}}.dump(2) << '\n';
        } else if (o.format == Format::Csv) {
            print_csv(out, {"spec", "count"}, {{spec.str(), std::to_string(count)}});
        } else {
            out << count << '\n';
        }
        return 0;
    }
    const auto basis = enumerate_invariant_basis(spec, o.cap_space);
    if (o.format == Format::Json) {
        out << nlohmann::json(basis).dump(2) << '\n';
        return 0;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto &e : basis) {
        std::string members;
        for (const auto &m : e.members) members += (members.empty() ? "" : ",") + m.str();
        rows.push_back({e.representative.str(), std::to_string(e.weight()), members});
    }
    const std::vector<std::string> header{"representative", "weight", "members"};
    if (o.format == Format::Csv) {
        print_csv(out, header, rows);
    } else {
        print_table(out, header, rows);
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct OracleOptions {
    std::string target;  // group spec or "energy"
    int qubits = 0;      // required for energy
    std::uint64_t cap_order = kDefaultOrderCap;
    int max_qubits = 5;
    bool full_group = false;
    Format format = Format::Table;
};

/// Commutant dimension by linear algebra, next to the combinatorial value.
inline int cmd_oracle(const OracleOptions &o, std::ostream &out) {
    nlohmann::json j;
    CommutantReport rep;
    BigInt expected;
    CommutantOptions copt;
    copt.max_qubits = o.max_qubits;
    if (o.target == "energy") {
        if (o.qubits < 1) throw InvalidSpec("oracle energy needs --qubits N");
        check_dense_cap(o.qubits, o.max_qubits);
        rep = commutant_dimension(std::vector<DenseOperator>{energy_hamiltonian(o.qubits)}, o.qubits, copt);
        expected = dim_energy_preserving(o.qubits);
        j["target"] = "energy";
    } else {
        const ProductGroupSpec spec = parse_group_spec(o.target);
        if (o.qubits && o.qubits != spec.degree()) throw InvalidSpec("--qubits disagrees with the group degree");
        // Enumerating the group checks the order cap and that the generators produce all of it.
        const auto elements = enumerate_elements(spec, o.cap_order);
        check_dense_cap(spec.degree(), o.max_qubits);
        std::set<Permutation> closure{Permutation::identity(spec.degree())};
        std::vector<Permutation> frontier{Permutation::identity(spec.degree())};
        const auto gens = generators(spec);
        while (!frontier.empty()) {
            Permutation p = frontier.back();
            frontier.pop_back();
            for (const auto &g : gens)
                if (closure.insert(p * g).second) frontier.push_back(p * g);
        }
        if (closure.size() != elements.elements.size()) throw Error("generators do not produce the full group");
        const auto mats = o.full_group ? symmetry_group_matrices(spec, o.cap_order) : symmetry_generator_matrices(spec);
        rep = commutant_dimension(mats, spec.degree(), copt);
        expected = dim_product(spec);
        j["target"] = spec.str();
        j["group_order"] = elements.elements.size();
        j["constraint_matrices"] = mats.size();
    }
    const bool agrees = BigInt(rep.dimension) == expected;
    j.update(nlohmann::json(rep));
    j["combinatorial_dimension"] = big_to_json(expected);
    j["agrees"] = agrees;
    if (o.format == Format::Json) {
        out << j.dump(2) << '\n';
    } else {
        std::vector<std::string> keys{"target", "qubits", "dimension", "combinatorial_dimension", "agrees", "rank",
                                      "basis_size", "constraint_count", "tolerance", "gap", "gap_ratio"};
        std::vector<std::string> vals;
        for (const auto &k : keys) vals.push_back(j[k].is_string() ? j[k].get<std::string>() : j[k].dump());
        if (o.format == Format::Csv) {
            print_csv(out, keys, {vals});
        } else {
            for (std::size_t i = 0; i < keys.size(); ++i) out << std::left << std::setw(24) << keys[i] << vals[i] << '\n';
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct ScalingOptions {
    int max_n = 14;
    Format format = Format::Table;
};

struct ScalingRow {
    std::string family;
    int n = 0;
    BigInt dimension;
    double per_4n_over_n = 0;    // dim * N / 4^N
    double per_n3 = 0;           // dim / N^3
    double per_4n_over_sqrtn = 0;  // dim * sqrt(N) / 4^N
};

inline std::vector<ScalingRow> scaling_rows(int max_n) {
    std::vector<ScalingRow> rows;
    auto add = [&](const std::string &name, int n, const BigInt &d) {
        const double dd = d.convert_to<double>(), p4 = std::pow(4.0, n);
        rows.push_back({name, n, d, dd * n / p4, dd / (double(n) * n * n), dd * std::sqrt(double(n)) / p4});
    };
    const std::pair<const char *, Family> fams[] = {{"unrestricted", Family::Trivial},
                                                    {"C_N", Family::Cyclic},
                                                    {"D_N", Family::Dihedral},
                                                    {"A_N", Family::Alternating},
                                                    {"S_N", Family::Symmetric}};
    for (const auto &[name, fam] : fams)
        for (int n = 1; n <= max_n; ++n) add(name, n, dim_invariant_algebra(GroupSpec(fam, n)));
    for (int n = 1; n <= max_n; ++n) add("energy", n, dim_energy_preserving(n));
    return rows;
}

inline int cmd_scaling_table(const ScalingOptions &o, std::ostream &out) {
    if (o.max_n < 1) throw InvalidSpec("--max-n must be >= 1");
    const auto rows = scaling_rows(o.max_n);
    const std::vector<std::string> header{"group", "N", "dimension", "dim*N/4^N", "dim/N^3", "dim*sqrt(N)/4^N"};
    if (o.format == Format::Json) {
        nlohmann::json js = nlohmann::json::array();
        for (const auto &r : rows) {
            js.push_back({{"group", r.family}, {"N", r.n}, {"dimension", big_to_json(r.dimension)},
                          {"dim*N/4^N", r.per_4n_over_n}, {"dim/N^3", r.per_n3}, {"dim*sqrt(N)/4^N", r.per_4n_over_sqrtn}});
        }
        out << js.dump(2) << '\n';
        return 0;
    }
    std::vector<std::vector<std::string>> cells;
    for (const auto &r : rows) {
        cells.push_back({r.family, std::to_string(r.n), r.dimension.str(), fmt_double(r.per_4n_over_n),
                         fmt_double(r.per_n3), fmt_double(r.per_4n_over_sqrtn)});
    }
    if (o.format == Format::Csv) {
        print_csv(out, header, cells);
    } else {
        print_table(out, header, cells);
    }
    return 0;
}

// ---------------------------------------------------------------------------

inline void write_variance(std::ostream &out, const std::vector<VarianceRow> &rows, bool all_slots, Format f) {
    if (f == Format::Json) {
        nlohmann::json js = nlohmann::json::array();
        for (const auto &r : rows) {
            js.push_back({{"qubits", r.qubits}, {"ansatz", ansatz_name(r.ansatz)}, {"slot", r.slot}, {"layers", r.layers},
                          {"parameters", r.n_params}, {"variance", r.variance}, {"mean", r.mean},
                          {"samples", r.samples}, {"seed", r.seed}});
        }
        out << js.dump(2) << '\n';
        return;
    }
    std::vector<std::string> header{"qubits", "ansatz"};
    if (all_slots) header.push_back("slot");
    for (const char *h : {"variance", "samples", "seed"}) header.emplace_back(h);
    std::vector<std::vector<std::string>> cells;
    for (const auto &r : rows) {
        std::ostringstream v;
        v << std::setprecision(17) << r.variance;
        std::vector<std::string> c{std::to_string(r.qubits), ansatz_name(r.ansatz)};
        if (all_slots) c.push_back(std::to_string(r.slot));
        c.push_back(v.str());
        c.push_back(std::to_string(r.samples));
        c.push_back(std::to_string(r.seed));
        cells.push_back(std::move(c));
    }
    if (f == Format::Csv) {
        print_csv(out, header, cells);
    } else {
        print_table(out, header, cells);
    }
}

// ---------------------------------------------------------------------------

/// Parses argv and runs one subcommand. Returns the process exit code.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"symlie: dimensions, bases and numerical checks for symmetry-restricted su(2^N)"};
    app.require_subcommand(1);
    std::string format = "table";

    DimOptions dim;
    auto *dim_cmd = app.add_subcommand("dim", "dimension of the G-invariant subalgebra");
    dim_cmd->add_option("spec", dim.spec, "group spec, e.g. C:4 or S:3xE:2; comma-separated columns with --sweep")->required();
    dim_cmd->add_option("--alphabet", dim.alphabet, "letters substituted into the cycle index (4 for Pauli strings)");
    dim_cmd->add_option("--sweep", dim.sweep, "A..B: one row per N; sizes may use N, N-k");

    OrbitsOptions orb;
    auto *orb_cmd = app.add_subcommand("orbits", "list the symmetrized Pauli-orbit basis");
    orb_cmd->add_option("spec", orb.spec, "group spec")->required();
    orb_cmd->add_flag("--count-only", orb.count_only, "print only the number of basis elements");
    orb_cmd->add_option("--cap-space", orb.cap_space, "maximum 4^N scanned");

    OracleOptions ora;
    auto *ora_cmd = app.add_subcommand("oracle", "commutant dimension by dense linear algebra");
    ora_cmd->add_option("target", ora.target, "group spec or 'energy'")->required();
    ora_cmd->add_option("--qubits", ora.qubits, "qubit count (required for energy)");
    ora_cmd->add_option("--cap-order", ora.cap_order, "maximum group order to enumerate");
    ora_cmd->add_option("--max-qubits", ora.max_qubits, "dense cap; 6 is the largest supported");
    ora_cmd->add_flag("--full-group", ora.full_group, "constrain with every group element, not just generators");

    ScalingOptions sc;
    auto *sc_cmd = app.add_subcommand("scaling-table", "per-family dimensions with asymptotic ratio columns");
    sc_cmd->add_option("--max-n", sc.max_n, "largest N");

    ExperimentConfig cfg;
    cfg.seed = 2025;
    int single_qubits = 0;
    std::string ansatz_list = "all", gradient_method = "adjoint", output_path;
    bool no_theta4 = false;
    unsigned threads = 0;
    auto *var_cmd = app.add_subcommand("variance", "gradient variance versus qubit count for the three ansatz families");
    var_cmd->add_option("--qubits", single_qubits, "run a single qubit count");
    var_cmd->add_option("--min-qubits", cfg.min_qubits, "first qubit count");
    var_cmd->add_option("--max-qubits", cfg.max_qubits, "last qubit count");
    var_cmd->add_option("--step", cfg.qubit_step, "qubit count step");
    var_cmd->add_option("--samples", cfg.samples_per_point, "parameter vectors per point");
    var_cmd->add_option("--dataset-size", cfg.dataset_size, "graph states per dataset");
    var_cmd->add_option("--edge-probability", cfg.edge_probability, "Erdos-Renyi edge probability");
    var_cmd->add_option("--layers", cfg.layers, "fixed layer count (default: about 6n parameters per ansatz)");
    var_cmd->add_option("--seed", cfg.seed, "experiment seed");
    var_cmd->add_option("--ansatz", ansatz_list, "all, or comma list of permutation, cyclic, strongly_entangling");
    var_cmd->add_flag("--no-theta4", no_theta4, "cyclic ansatz without the distance-2 ZZ ring");
    var_cmd->add_flag("--all-slots", cfg.all_slots, "report every parameter instead of the probe");
    var_cmd->add_option("--gradient", gradient_method, "adjoint or shift")->check(CLI::IsMember({"adjoint", "shift"}));
    var_cmd->add_option("--threads", threads, "worker threads (default SYMLIE_THREADS or hardware)");
    var_cmd->add_option("--output", output_path, "write data to this file instead of stdout");

    for (auto *sub : {dim_cmd, orb_cmd, ora_cmd, sc_cmd, var_cmd}) {
        sub->add_option("--format", format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err);
    }

    try {
        if (*dim_cmd) {
            dim.format = parse_format(format);
            return cmd_dim(dim, out);
        }
        if (*orb_cmd) {
            orb.format = parse_format(format);
            return cmd_orbits(orb, out);
        }
        if (*ora_cmd) {
            ora.format = parse_format(format);
            return cmd_oracle(ora, out);
        }
        if (*sc_cmd) {
            sc.format = parse_format(format);
            return cmd_scaling_table(sc, out);
        }
        if (*var_cmd) {
            const bool format_given = var_cmd->get_option("--format")->count() > 0;
            const Format f = format_given ? parse_format(format) : Format::Csv;
            if (single_qubits) cfg.min_qubits = cfg.max_qubits = single_qubits;
            if (ansatz_list != "all") {
                cfg.ansatzes.clear();
                for (const auto &a : split(ansatz_list, ',')) cfg.ansatzes.push_back(ansatz_from_name(a));
            }
            cfg.ansatz_options.cyclic_theta4 = !no_theta4;
            cfg.method = gradient_method == "shift" ? GradientMethod::ParameterShift : GradientMethod::Adjoint;
            cfg.workers = threads;
            const auto rows = run_variance_experiment(cfg);
            if (output_path.empty()) {
                write_variance(out, rows, cfg.all_slots, f);
            } else {
                std::ofstream file(output_path);
                if (!file) throw Error("cannot open output file '" + output_path + "'");
                write_variance(file, rows, cfg.all_slots, f);
            }
            return 0;
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace symlie::cli
