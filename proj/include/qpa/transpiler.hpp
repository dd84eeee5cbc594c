// transpiler.hpp
// Lowers logical circuits onto a directed coupling map using four fixed
// passes, in order:
//
//   1. Toffoli -> 6 CNOT + 9 single-qubit gates (Clifford+T network)
//   2. CPHASE  -> 2 CNOT + 3 U1
//   3. SWAP elimination by wire relabeling
//   4. CNOT direction reversal via four Hadamards
//
// Every pass preserves the unitary up to global phase and the relabeling
// returned in the report. There is no SWAP-chain routing: a two-qubit gate
// whose pair is disconnected in both directions is an error.

#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qpa/builder.hpp"
#include "qpa/core.hpp"

namespace qpa {

// ── coupling map ─────────────────────────────────────────────────────────

struct CouplingMap {
    int num_physical = 0;
    std::set<std::pair<int, int>> edges;  // (control, target)

    CouplingMap() = default;
    CouplingMap(int n, std::set<std::pair<int, int>> e) : num_physical(n), edges(std::move(e)) {
        for (const auto& [c, t] : edges) {
            if (c == t) throw DimensionMismatch("coupling map has a self-loop");
            if (c < 0 || t < 0 || c >= n || t >= n)
                throw IndexOutOfRange("coupling edge references an invalid qubit id");
        }
    }

    bool has_edge(int control, int target) const { return edges.count({control, target}) > 0; }

    // The two 5-qubit devices the experiments ran on. Same connectivity,
    // partly opposite edge directions.
    static CouplingMap ibmqx2() {
        return CouplingMap(5, {{0, 1}, {0, 2}, {1, 2}, {3, 2}, {3, 4}, {4, 2}});
    }
    static CouplingMap ibmqx4() {
        return CouplingMap(5, {{1, 0}, {2, 0}, {2, 1}, {2, 4}, {3, 2}, {3, 4}});
    }

    static CouplingMap from_json(const nlohmann::json& j) {
        std::set<std::pair<int, int>> e;
        for (const auto& edge : j.at("edges"))
            e.insert({edge.at(0).get<int>(), edge.at(1).get<int>()});
        return CouplingMap(j.at("num_qubits").get<int>(), std::move(e));
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["num_qubits"] = num_physical;
        auto arr = nlohmann::ordered_json::array();
        for (const auto& [c, t] : edges) arr.push_back({c, t});
        j["edges"] = arr;
        return j;
    }
};

// ── single-gate decompositions ───────────────────────────────────────────

// Toffoli as the standard Clifford+T network: 6 CNOT and 9 single-qubit
// gates (H, T, and T-dagger emitted as U1(-pi/4)).
inline Circuit decompose_toffoli(const Gate& g) {
    if (g.kind != GateKind::TOFFOLI) throw DimensionMismatch("decompose_toffoli expects TOFFOLI");
    const int a = g.operands[0], b = g.operands[1], t = g.operands[2];
    const double tdg = -std::numbers::pi / 4.0;
    Circuit c(std::max({a, b, t}) + 1);
    c.h(t);
    c.cnot(b, t);
    c.u1(tdg, t);
    c.cnot(a, t);
    c.t(t);
    c.cnot(b, t);
    c.u1(tdg, t);
    c.cnot(a, t);
    c.t(b);
    c.t(t);
    c.cnot(a, b);
    c.h(t);
    c.t(a);
    c.u1(tdg, b);
    c.cnot(a, b);
    return c;
}

// CPHASE(lambda) on (c, t) as CNOT-conjugated U1s: the minimal 2-CNOT form.
inline Circuit decompose_cphase(const Gate& g) {
    if (g.kind != GateKind::CPHASE) throw DimensionMismatch("decompose_cphase expects CPHASE");
    const int control = g.operands[0], target = g.operands[1];
    const double half = g.param / 2.0;
    Circuit c(std::max(control, target) + 1);
    c.cnot(control, target);
    c.u1(-half, target);
    c.cnot(control, target);
    c.u1(half, control);
    c.u1(half, target);
    return c;
}

// CNOT on an edge only available in the opposite direction: conjugate the
// reversed CNOT with Hadamards on both lines.
inline Circuit reverse_cnot(const Gate& g) {
    if (g.kind != GateKind::CNOT) throw DimensionMismatch("reverse_cnot expects CNOT");
    const int control = g.operands[0], target = g.operands[1];
    Circuit c(std::max(control, target) + 1);
    c.h(control);
    c.h(target);
    c.cnot(target, control);
    c.h(control);
    c.h(target);
    return c;
}

// ── SWAP elimination ─────────────────────────────────────────────────────

// Drops every SWAP and reroutes all later gates to where the data actually
// sits. The returned labeling maps each input wire w to the output wire
// carrying its data, so unitary_of(output) = P(labeling) * unitary_of(input)
// where P permutes basis-state bits accordingly.
inline std::pair<Circuit, QubitLabeling> eliminate_swaps(const Circuit& c) {
    std::vector<int> cur(c.num_qubits);
    for (int i = 0; i < c.num_qubits; ++i) cur[i] = i;
    Circuit out(c.num_qubits);
    for (const auto& g : c.gates) {
        if (g.kind == GateKind::SWAP) {
            std::swap(cur[g.operands[0]], cur[g.operands[1]]);
            continue;
        }
        std::vector<int> ops;
        ops.reserve(g.operands.size());
        for (int w : g.operands) ops.push_back(cur[w]);
        out.add(Gate(g.kind, std::move(ops), g.param));
    }
    return {std::move(out), QubitLabeling(std::move(cur))};
}

// Basis permutation matrix of a wire relabeling: bit at wire pi(w) of the
// image equals bit at wire w of the source.
inline DenseMatrix relabel_permutation(const QubitLabeling& pi, int n) {
    const std::size_t d = std::size_t{1} << n;
    DenseMatrix p(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t j = 0;
        for (int w = 0; w < n; ++w)
            j = set_qubit_bit(j, pi(w), n, qubit_bit(i, w, n));
        p.at(j, i) = 1.0;
    }
    return p;
}

// Swap-free inverse QFT for two qubits: 2 CNOT and 5 single-qubit gates.
// The omitted SWAP is folded into a line interchange, i.e. this circuit
// followed by a SWAP equals the full F-dagger.
inline Circuit decompose_inverse_qft_2q();  // defined after transpile helpers

// ── transpilation ────────────────────────────────────────────────────────

struct TranspileReport {
    std::map<std::string, int> input_counts;
    std::map<std::string, int> output_counts;
    std::map<std::string, int> pass_deltas;  // gates added minus removed, per pass
    QubitLabeling labeling_before;
    QubitLabeling labeling_after;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["input_counts"] = input_counts;
        j["output_counts"] = output_counts;
        j["pass_deltas"] = pass_deltas;
        j["labeling_before"] = labeling_before.to_physical;
        j["labeling_after"] = labeling_after.to_physical;
        return j;
    }
};

namespace detail {

inline Circuit expand_kind(const Circuit& c, GateKind kind, Circuit (*lower)(const Gate&)) {
    Circuit out(c.num_qubits);
    for (const auto& g : c.gates) {
        if (g.kind == kind)
            out.append(lower(g));
        else
            out.add(g);
    }
    return out;
}

}  // namespace detail

inline std::pair<Circuit, TranspileReport> transpile(const Circuit& c, const CouplingMap& map,
                                                     const QubitLabeling& placement) {
    if (placement.size() != c.num_qubits)
        throw DimensionMismatch("placement width does not match circuit");
    for (int w = 0; w < c.num_qubits; ++w)
        if (placement(w) < 0 || placement(w) >= map.num_physical)
            throw IndexOutOfRange("placement names a qubit outside the device");

    TranspileReport report;
    report.input_counts = count_by_kind(c);
    report.labeling_before = QubitLabeling::identity(c.num_qubits);
    const auto total = [](const Circuit& circ) { return static_cast<int>(circ.size()); };

    Circuit stage = detail::expand_kind(c, GateKind::TOFFOLI, decompose_toffoli);
    report.pass_deltas["toffoli"] = total(stage) - total(c);

    Circuit lowered = detail::expand_kind(stage, GateKind::CPHASE, decompose_cphase);
    report.pass_deltas["cphase"] = total(lowered) - total(stage);

    auto [unswapped, labeling] = eliminate_swaps(lowered);
    report.pass_deltas["swap"] = total(unswapped) - total(lowered);
    report.labeling_after = labeling;

    Circuit out(c.num_qubits);
    for (const auto& g : unswapped.gates) {
        if (g.kind != GateKind::CNOT) {
            out.add(g);
            continue;
        }
        const int pc = placement(g.operands[0]);
        const int pt = placement(g.operands[1]);
        if (map.has_edge(pc, pt)) {
            out.add(g);
        } else if (map.has_edge(pt, pc)) {
            out.append(reverse_cnot(g));
        } else {
            throw UnroutableCircuit("CNOT on wires (" + std::to_string(g.operands[0]) + "," +
                                    std::to_string(g.operands[1]) + ") needs edge " +
                                    std::to_string(pc) + "->" + std::to_string(pt) +
                                    " or its reverse, neither exists");
        }
    }
    report.pass_deltas["direction"] = total(out) - total(unswapped);
    report.output_counts = count_by_kind(out);
    return {std::move(out), std::move(report)};
}

inline Circuit decompose_inverse_qft_2q() {
    const Circuit lowered =
        detail::expand_kind(inverse_qft_circuit(2), GateKind::CPHASE, decompose_cphase);
    return eliminate_swaps(lowered).first;
}

}  // namespace qpa
