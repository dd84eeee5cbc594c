// Transpiler passes: decompositions, SWAP elimination, direction fixing,
// and unitary preservation on randomized circuits.

#include "qpa/transpiler.hpp"

#include <gtest/gtest.h>

#include <numbers>

#include "qpa/sampling.hpp"
#include "qpa/simulator.hpp"

using namespace qpa;

namespace {

bool native_gate_set(const Circuit& c) {
    for (const auto& g : c.gates)
        if (g.kind == GateKind::CPHASE || g.kind == GateKind::SWAP ||
            g.kind == GateKind::TOFFOLI)
            return false;
    return true;
}

bool edges_respected(const Circuit& c, const CouplingMap& map, const QubitLabeling& place) {
    for (const auto& g : c.gates)
        if (g.kind == GateKind::CNOT &&
            !map.has_edge(place(g.operands[0]), place(g.operands[1])))
            return false;
    return true;
}

int total_gates(const std::map<std::string, int>& counts) {
    int n = 0;
    for (const auto& [_, v] : counts) n += v;
    return n;
}

Gate random_gate(SplitMix64& rng, int n) {
    const GateKind kinds[] = {GateKind::X,    GateKind::Z,      GateKind::H,    GateKind::S,
                              GateKind::T,    GateKind::U1,     GateKind::CNOT, GateKind::CPHASE,
                              GateKind::SWAP, GateKind::TOFFOLI};
    while (true) {
        const GateKind k = kinds[rng.next() % 10];
        if (gate_arity(k) > n) continue;
        std::vector<int> ops;
        while (static_cast<int>(ops.size()) < gate_arity(k)) {
            const int q = static_cast<int>(rng.next() % static_cast<std::uint64_t>(n));
            bool dup = false;
            for (int o : ops) dup = dup || o == q;
            if (!dup) ops.push_back(q);
        }
        return Gate(k, std::move(ops),
                    rng.uniform() * 4.0 * std::numbers::pi - 2.0 * std::numbers::pi);
    }
}

CouplingMap random_map(SplitMix64& rng, int n) {
    std::set<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            switch (rng.next() % 3) {
                case 0: edges.insert({a, b}); break;
                case 1: edges.insert({b, a}); break;
                default:
                    edges.insert({a, b});
                    edges.insert({b, a});
            }
        }
    return CouplingMap(n, std::move(edges));
}

}  // namespace

TEST(DecomposeToffoli, CountsAndUnitary) {
    const Gate tof(GateKind::TOFFOLI, {0, 1, 2});
    const Circuit c = decompose_toffoli(tof);
    EXPECT_EQ(count_kind(c, GateKind::CNOT), 6);
    EXPECT_EQ(count_single_qubit(c), 9);
    EXPECT_TRUE(equal_up_to_global_phase(unitary_of(c), gate_matrix(tof), 1e-9));
    // truth table spot check: |110> -> |111>
    const StateVector out = run_circuit(c, StateVector::basis(3, 6));
    EXPECT_NEAR(std::abs(out.amplitudes[7]), 1.0, 1e-12);
}

TEST(DecomposeToffoli, ArbitraryOperandOrder) {
    const Gate tof(GateKind::TOFFOLI, {2, 0, 1});
    Circuit direct(3);
    direct.add(tof);
    EXPECT_TRUE(equal_up_to_global_phase(unitary_of(decompose_toffoli(tof)),
                                         unitary_of(direct), 1e-9));
}

TEST(DecomposeCphase, ExactIdentity) {
    for (double lambda : {0.3, -std::numbers::pi / 2.0, 2.9}) {
        const Gate cp(GateKind::CPHASE, {0, 1}, lambda);
        const Circuit c = decompose_cphase(cp);
        EXPECT_EQ(count_kind(c, GateKind::CNOT), 2);
        EXPECT_EQ(count_kind(c, GateKind::U1), 3);
        EXPECT_LE(max_abs_diff(unitary_of(c), gate_matrix(cp)), 1e-12);
    }
}

TEST(ReverseCnot, ExactAndIdempotent) {
    const Gate cnot(GateKind::CNOT, {0, 1});
    const Circuit rev = reverse_cnot(cnot);
    EXPECT_EQ(count_kind(rev, GateKind::H), 4);
    EXPECT_EQ(count_kind(rev, GateKind::CNOT), 1);
    Circuit direct(2);
    direct.add(cnot);
    EXPECT_LE(max_abs_diff(unitary_of(rev), unitary_of(direct)), 1e-12);

    // reverse the reversed CNOT again: still the original unitary
    Circuit twice(2);
    for (const auto& g : rev.gates) {
        if (g.kind == GateKind::CNOT)
            twice.append(reverse_cnot(g));
        else
            twice.add(g);
    }
    EXPECT_LE(max_abs_diff(unitary_of(twice), unitary_of(direct)), 1e-12);
}

TEST(EliminateSwaps, SingleSwapBecomesRelabeling) {
    Circuit c(2);
    c.swap(0, 1);
    const auto [out, labeling] = eliminate_swaps(c);
    EXPECT_TRUE(out.empty());
    EXPECT_EQ(labeling.to_physical, (std::vector<int>{1, 0}));
}

TEST(EliminateSwaps, NoSwapsMeansUntouched) {
    Circuit c(3);
    c.h(0).cnot(1, 2).u1(0.5, 1);
    const auto [out, labeling] = eliminate_swaps(c);
    EXPECT_EQ(out.size(), c.size());
    EXPECT_TRUE(labeling.is_identity());
}

TEST(EliminateSwaps, QftRelabelingContract) {
    const Circuit qft = qft_circuit(2);
    const auto [out, labeling] = eliminate_swaps(qft);
    EXPECT_EQ(count_kind(out, GateKind::SWAP), 0);
    const DenseMatrix pi = relabel_permutation(labeling, 2);
    EXPECT_LE(max_abs_diff(unitary_of(out), pi * unitary_of(qft)), 1e-12);
}

TEST(EliminateSwaps, RandomizedRelabelingContract) {
    SplitMix64 rng(0x51AB);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 3);
        Circuit c(n);
        for (int i = 0; i < 25; ++i) c.add(random_gate(rng, n));
        const auto [out, labeling] = eliminate_swaps(c);
        EXPECT_EQ(count_kind(out, GateKind::SWAP), 0);
        const DenseMatrix pi = relabel_permutation(labeling, n);
        EXPECT_LE(max_abs_diff(unitary_of(out), pi * unitary_of(c)), 1e-9);
    }
}

TEST(InverseQft2q, SwapOmittedLowering) {
    const Circuit c = decompose_inverse_qft_2q();
    EXPECT_EQ(count_kind(c, GateKind::CNOT), 2);
    EXPECT_EQ(count_single_qubit(c), 5);
    EXPECT_TRUE(native_gate_set(c));
    // the circuit followed by a SWAP equals the full F-dagger
    Circuit with_swap = c;
    with_swap.swap(0, 1);
    EXPECT_TRUE(
        equal_up_to_global_phase(unitary_of(with_swap), adjoint(dft_matrix(4)), 1e-9));
}

TEST(InverseQft2q, PipelineReadWithInterchangedLines) {
    // prep + P_1^+ + swap-omitted decode: the raw register reads |10>;
    // interchanging the lines recovers the logical outcome |01> = 1
    Circuit c(2);
    c.append(optimized_prep_circuit(2));
    c.append(permutation_circuit(2, {4, 1, Parity::positive}));
    c.append(decompose_inverse_qft_2q());
    const Distribution dist = measure_all(run_circuit(c));
    EXPECT_NEAR(dist.probabilities[2], 1.0, 1e-9);  // raw wires
    const DenseMatrix pi = relabel_permutation(QubitLabeling({1, 0}), 2);
    // logical index after interchanging: bit-swap of 2 is 1
    EXPECT_NEAR(std::abs(pi.at(1, 2) - Cx{1.0, 0.0}), 0.0, 0.0);
}

TEST(Transpile, OptimizedPipelineOnIbmqx2AddsNothing) {
    const Circuit pipeline =
        build_pipeline({SchemeVariant::optimized, 2}, {4, 1, Parity::positive});
    const auto [out, report] = transpile(pipeline, CouplingMap::ibmqx2(), QubitLabeling({1, 0}));
    EXPECT_EQ(out.size(), pipeline.size());
    for (const auto& [pass, delta] : report.pass_deltas) EXPECT_EQ(delta, 0) << pass;
    EXPECT_TRUE(edges_respected(out, CouplingMap::ibmqx2(), QubitLabeling({1, 0})));
}

TEST(Transpile, OriginalPipelineOnIbmqx4DecodeCounts) {
    // P_0^+ has an empty permutation stage, so the output beyond the 4 prep
    // gates is exactly the lowered inverse QFT: 2 CNOT + 5 single-qubit
    const Circuit pipeline =
        build_pipeline({SchemeVariant::original, 2}, {4, 0, Parity::positive});
    const auto [out, report] = transpile(pipeline, CouplingMap::ibmqx4(), QubitLabeling({3, 2}));
    EXPECT_EQ(count_kind(out, GateKind::CNOT), 2);
    EXPECT_EQ(count_single_qubit(out), static_cast<int>(out.size()) - 2);
    EXPECT_EQ(out.size(), 11u);  // 4 prep + 7 decode
    EXPECT_TRUE(native_gate_set(out));
    EXPECT_TRUE(edges_respected(out, CouplingMap::ibmqx4(), QubitLabeling({3, 2})));
    EXPECT_EQ(report.labeling_after.to_physical, (std::vector<int>{1, 0}));
}

TEST(Transpile, UnroutablePairIsAnError) {
    Circuit c(2);
    c.cnot(0, 1);
    // qubits 0 and 3 are disconnected on ibmqx4
    try {
        transpile(c, CouplingMap::ibmqx4(), QubitLabeling({0, 3}));
        FAIL() << "expected UnroutableCircuit";
    } catch (const UnroutableCircuit& e) {
        EXPECT_NE(std::string(e.what()).find("0->3"), std::string::npos);
    }
}

TEST(Transpile, ReportAccountingBalances) {
    SplitMix64 rng(0xACC0);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 3);
        Circuit c(n);
        for (int i = 0; i < 20; ++i) c.add(random_gate(rng, n));
        const CouplingMap map = random_map(rng, n);
        const auto [out, report] = transpile(c, map, QubitLabeling::identity(n));
        int delta_sum = 0;
        for (const auto& [_, d] : report.pass_deltas) delta_sum += d;
        EXPECT_EQ(total_gates(report.output_counts), total_gates(report.input_counts) + delta_sum);
        EXPECT_EQ(total_gates(report.output_counts), static_cast<int>(out.size()));
    }
}

TEST(Transpile, RandomizedUnitaryPreservation) {
    SplitMix64 rng(0x7A57);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 4);
        Circuit c(n);
        for (int i = 0; i < 18; ++i) c.add(random_gate(rng, n));
        const CouplingMap map = random_map(rng, n);
        const QubitLabeling place = QubitLabeling::identity(n);
        const auto [out, report] = transpile(c, map, place);
        EXPECT_TRUE(native_gate_set(out));
        EXPECT_TRUE(edges_respected(out, map, place));
        const DenseMatrix pi = relabel_permutation(report.labeling_after, n);
        EXPECT_TRUE(equal_up_to_global_phase(pi * unitary_of(c), unitary_of(out), 1e-9))
            << "trial " << trial;
    }
}

TEST(CouplingMap, PresetsAndJsonRoundTrip) {
    const CouplingMap qx2 = CouplingMap::ibmqx2();
    EXPECT_TRUE(qx2.has_edge(0, 1));
    EXPECT_FALSE(qx2.has_edge(1, 0));
    const CouplingMap qx4 = CouplingMap::ibmqx4();
    EXPECT_TRUE(qx4.has_edge(3, 2));
    EXPECT_FALSE(qx4.has_edge(2, 3));
    const CouplingMap back = CouplingMap::from_json(qx4.to_json());
    EXPECT_EQ(back.num_physical, qx4.num_physical);
    EXPECT_EQ(back.edges, qx4.edges);
    EXPECT_THROW(CouplingMap(2, {{0, 0}}), DimensionMismatch);
    EXPECT_THROW(CouplingMap(2, {{0, 5}}), IndexOutOfRange);
}
