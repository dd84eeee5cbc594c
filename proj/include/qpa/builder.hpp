// builder.hpp
// Builders for every circuit in the permutation-parity pipelines:
//
//   - textbook QFT / inverse QFT (quadratic gate count),
//   - the 2n-gate state preparation that replaces the leading QFT,
//   - the 2-gate decode that replaces the trailing inverse QFT,
//   - cyclic permutation circuits P_m^± for any register width,
//   - full pipelines for both the original and the optimized scheme.

#pragma once

#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "qpa/core.hpp"
#include "qpa/reference.hpp"

namespace qpa {

enum class SchemeVariant { original, optimized };

inline const char* scheme_name(SchemeVariant v) {
    return v == SchemeVariant::original ? "original" : "optimized";
}

inline SchemeVariant scheme_from_name(const std::string& s) {
    if (s == "original") return SchemeVariant::original;
    if (s == "optimized") return SchemeVariant::optimized;
    throw ParseError("unknown scheme: " + s);
}

struct QpaScheme {
    SchemeVariant variant;
    int n;

    QpaScheme(SchemeVariant v, int qubits) : variant(v), n(qubits) {
        if (n < 1) throw DimensionMismatch("scheme needs n >= 1");
    }

    std::size_t dim() const { return std::size_t{1} << n; }
};

// All 2d permutation operators of an n-qubit register, positives first.
inline std::vector<PermutationSpec> all_specs(int n) {
    const std::size_t d = std::size_t{1} << n;
    std::vector<PermutationSpec> specs;
    for (Parity p : {Parity::positive, Parity::negative})
        for (std::size_t m = 0; m < d; ++m) specs.emplace_back(d, m, p);
    return specs;
}

// ── QFT ──────────────────────────────────────────────────────────────────

// Standard QFT under the q0-most-significant convention: n Hadamards,
// n(n-1)/2 controlled phases and floor(n/2) trailing swaps. Matches the
// positive-exponent DFT matrix exactly.
inline Circuit qft_circuit(int n) {
    Circuit c(n);
    for (int j = 0; j < n; ++j) {
        c.h(j);
        for (int k = j + 1; k < n; ++k)
            c.cphase(std::numbers::pi / static_cast<double>(1 << (k - j)), k, j);
    }
    for (int j = 0; j < n / 2; ++j) c.swap(j, n - 1 - j);
    return c;
}

// Inverse of a circuit: reversed order, conjugated phases.
inline Circuit inverse_of(const Circuit& c) {
    Circuit inv(c.num_qubits);
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        switch (it->kind) {
            case GateKind::U1:
                inv.u1(-it->param, it->operands[0]);
                break;
            case GateKind::CPHASE:
                inv.cphase(-it->param, it->operands[0], it->operands[1]);
                break;
            case GateKind::S:
                inv.u1(-std::numbers::pi / 2.0, it->operands[0]);
                break;
            case GateKind::T:
                inv.u1(-std::numbers::pi / 4.0, it->operands[0]);
                break;
            default:
                inv.add(*it);  // X, Z, H, CNOT, SWAP, TOFFOLI are self-inverse
        }
    }
    return inv;
}

inline Circuit inverse_qft_circuit(int n) { return inverse_of(qft_circuit(n)); }

// ── optimized preparation and decode ─────────────────────────────────────

// Per-qubit phase of the prepared product state: theta_j = 2*pi*2^-(j+1).
inline double prep_phase(int j) {
    return 2.0 * std::numbers::pi / static_cast<double>(std::size_t{1} << (j + 1));
}

// Prepares F|1> from |0...0> with one Hadamard and one phase gate per line:
// 2n gates total. Qubit 0 gets Z, qubit 1 gets S, qubit 2 gets T, deeper
// lines get U1(2*pi*2^-(j+1)).
inline Circuit optimized_prep_circuit(int n) {
    Circuit c(n);
    for (int j = 0; j < n; ++j) {
        c.h(j);
        switch (j) {
            case 0: c.z(j); break;
            case 1: c.s(j); break;
            case 2: c.t(j); break;
            default: c.u1(prep_phase(j), j);
        }
    }
    return c;
}

// Rotates qubit 1 from its ±i relative phase onto the computational basis:
// U1(pi/2) then H, leaving every other line untouched. The subsequent
// measurement of qubit 1 reads |1> for positive parity and |0> for negative.
inline Circuit optimized_decode_circuit(int n) {
    if (n < 2)
        throw UnsupportedDimension("decode acts on qubit 1 and needs n >= 2");
    Circuit c(n);
    c.u1(std::numbers::pi / 2.0, 1);
    c.h(1);
    return c;
}

// ── permutation circuits ─────────────────────────────────────────────────

namespace detail {

inline bool self_inverse(GateKind k) {
    switch (k) {
        case GateKind::X:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::CNOT:
        case GateKind::SWAP:
        case GateKind::TOFFOLI:
            return true;
        default:
            return false;
    }
}

// Multi-controlled Z across `qubits` as a phase polynomial: one parity-
// conjugated U1 per nonempty subset, angle (+-) pi / 2^(r-1). Exact operator
// identity, no ancilla.
inline void emit_mcz(Circuit& c, const std::vector<int>& qubits) {
    const int r = static_cast<int>(qubits.size());
    const double base = std::numbers::pi / static_cast<double>(std::size_t{1} << (r - 1));
    for (unsigned mask = 1; mask < (1u << r); ++mask) {
        std::vector<int> members;
        for (int i = 0; i < r; ++i)
            if (mask & (1u << i)) members.push_back(qubits[i]);
        const int last = members.back();
        const double angle = (members.size() % 2 == 1) ? base : -base;
        for (std::size_t i = 0; i + 1 < members.size(); ++i) c.cnot(members[i], last);
        c.u1(angle, last);
        for (std::size_t i = members.size() - 1; i-- > 0;) c.cnot(members[i], last);
    }
}

// X on `target` controlled by every qubit in `controls`.
inline void emit_mcx(Circuit& c, const std::vector<int>& controls, int target) {
    switch (controls.size()) {
        case 0:
            c.x(target);
            return;
        case 1:
            c.cnot(controls[0], target);
            return;
        case 2:
            c.toffoli(controls[0], controls[1], target);
            return;
        default: {
            std::vector<int> all = controls;
            all.push_back(target);
            c.h(target);
            emit_mcz(c, all);
            c.h(target);
            return;
        }
    }
}

// Adds 2^b to the register: an increment cascade on the top n-b lines.
inline void emit_shift_stage(Circuit& c, int n, int b) {
    const int width = n - b;  // qubits 0 .. width-1 participate
    for (int target = 0; target < width - 1; ++target) {
        std::vector<int> controls;
        for (int q = target + 1; q < width; ++q) controls.push_back(q);
        emit_mcx(c, controls, target);
    }
    c.x(width - 1);
}

inline Circuit shift_circuit(int n, std::size_t m) {
    Circuit c(n);
    for (int b = 0; b < n; ++b)
        if (m & (std::size_t{1} << b)) emit_shift_stage(c, n, b);
    return c;
}

// The eight hand-placed two-qubit operators (X and CNOT only).
inline Circuit curated_two_qubit_permutation(const PermutationSpec& spec) {
    Circuit c(2);
    const bool positive = spec.parity == Parity::positive;
    switch (spec.m) {
        case 0:
            if (!positive) c.cnot(1, 0);
            break;
        case 1:
            if (positive)
                c.cnot(1, 0).x(1);
            else
                c.x(1);
            break;
        case 2:
            if (positive)
                c.x(0);
            else
                c.cnot(1, 0).x(0);
            break;
        case 3:
            if (positive)
                c.x(1).cnot(1, 0);
            else
                c.x(0).x(1);
            break;
    }
    return c;
}

}  // namespace detail

// Cancels adjacent identical self-inverse gates until a fixpoint.
inline Circuit peephole_cancel(const Circuit& c) {
    std::vector<Gate> gates = c.gates;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < gates.size(); ++i) {
            if (gates[i] == gates[i + 1] && detail::self_inverse(gates[i].kind)) {
                gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(i),
                            gates.begin() + static_cast<std::ptrdiff_t>(i) + 2);
                changed = true;
                break;
            }
        }
    }
    Circuit out(c.num_qubits);
    for (auto& g : gates) out.add(std::move(g));
    return out;
}

// Circuit realization of P_m^±, exactly equal (entrywise) to the reference
// permutation matrix. n = 2 uses the hand-placed set; wider registers build
// the positive shift as one increment cascade per set bit of m, and obtain
// negatives by inverting every line first (P_m^- = shift by (m+1) after NEG).
inline Circuit permutation_circuit(int n, const PermutationSpec& spec) {
    if (spec.d != (std::size_t{1} << n))
        throw UnsupportedDimension("permutation dimension must equal 2^n");
    if (n == 2) return detail::curated_two_qubit_permutation(spec);
    Circuit c(n);
    if (spec.parity == Parity::positive) {
        c.append(detail::shift_circuit(n, spec.m));
    } else {
        for (int q = 0; q < n; ++q) c.x(q);
        c.append(detail::shift_circuit(n, (spec.m + 1) % spec.d));
    }
    return peephole_cancel(c);
}

// ── pipelines ────────────────────────────────────────────────────────────

// Full circuit for one oracle query. Both schemes share the 2n-gate state
// preparation (there is nothing to gain from a full QFT on a known input);
// the original scheme decodes with the inverse QFT and measures the whole
// register, the optimized scheme decodes qubit 1 alone.
inline Circuit build_pipeline(const QpaScheme& scheme, const PermutationSpec& spec) {
    if (spec.d != scheme.dim())
        throw DimensionMismatch("spec dimension does not match scheme width");
    Circuit c(scheme.n);
    c.append(optimized_prep_circuit(scheme.n));
    c.append(permutation_circuit(scheme.n, spec));
    if (scheme.variant == SchemeVariant::optimized)
        c.append(optimized_decode_circuit(scheme.n));
    else
        c.append(inverse_qft_circuit(scheme.n));
    return c;
}

// ── gate counting ────────────────────────────────────────────────────────

inline std::map<std::string, int> count_by_kind(const Circuit& c) {
    std::map<std::string, int> counts;
    for (const auto& g : c.gates) ++counts[gate_name(g.kind)];
    return counts;
}

inline int count_kind(const Circuit& c, GateKind k) {
    int n = 0;
    for (const auto& g : c.gates)
        if (g.kind == k) ++n;
    return n;
}

inline int count_single_qubit(const Circuit& c) {
    int n = 0;
    for (const auto& g : c.gates)
        if (g.operands.size() == 1) ++n;
    return n;
}

inline int count_two_qubit(const Circuit& c) {
    int n = 0;
    for (const auto& g : c.gates)
        if (g.operands.size() == 2) ++n;
    return n;
}

// Closed-form gate counts used by the scaling table.
inline int optimized_gate_total(int n) { return 2 * n + 2; }
inline int qft_hadamard_cphase_count(int n) { return n * (n + 1) / 2; }
inline int qft_swap_count(int n) { return n / 2; }
inline int original_gate_total(int n) {
    return 2 * n + qft_hadamard_cphase_count(n) + qft_swap_count(n);
}

}  // namespace qpa
