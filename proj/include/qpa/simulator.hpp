// simulator.hpp
// Statevector simulation: gate application kernels, circuit execution,
// exact measurement distributions and single-qubit marginals.
//
// The public contract is value-in/value-out; kernels run in place on a
// scratch copy. Qubit 0 is the most significant index bit.

#pragma once

#include <cmath>
#include <vector>

#include "qpa/core.hpp"
#include "qpa/dense.hpp"
#include "qpa/gates.hpp"

namespace qpa {

struct StateVector {
    std::size_t dim = 2;
    std::vector<Cx> amplitudes;

    StateVector(std::size_t d, std::vector<Cx> amps) : dim(d), amplitudes(std::move(amps)) {
        if (dim < 2) throw DimensionMismatch("statevector dimension must be >= 2");
        if (amplitudes.size() != dim) throw DimensionMismatch("amplitude count != dim");
        double norm_sq = 0.0;
        for (const auto& a : amplitudes) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
                throw DimensionMismatch("amplitudes must be finite");
            norm_sq += std::norm(a);
        }
        if (std::abs(norm_sq - 1.0) > 1e-8)
            throw DimensionMismatch("statevector is not normalized");
    }

    static StateVector basis(int n, std::size_t index) {
        const std::size_t d = std::size_t{1} << n;
        if (index >= d) throw IndexOutOfRange("basis index outside dimension");
        std::vector<Cx> amps(d, Cx{0.0, 0.0});
        amps[index] = 1.0;
        return StateVector(d, std::move(amps));
    }

    static StateVector zero_state(int n) { return basis(n, 0); }

    int num_qubits() const {
        int n = 0;
        std::size_t d = dim;
        while (d > 1) {
            if (d & 1) throw DimensionMismatch("dimension is not a power of two");
            d >>= 1;
            ++n;
        }
        return n;
    }

    double norm() const {
        double s = 0.0;
        for (const auto& a : amplitudes) s += std::norm(a);
        return std::sqrt(s);
    }
};

struct Distribution {
    std::size_t dim = 0;
    std::vector<double> probabilities;
};

namespace detail {

// In-place k-qubit gate kernel. ops[0] is the local most-significant qubit.
inline void apply_gate_inplace(std::vector<Cx>& amps, int n, const Gate& g) {
    const DenseMatrix u = gate_matrix(g);
    const int k = static_cast<int>(g.operands.size());
    const std::size_t sub_dim = std::size_t{1} << k;
    std::vector<std::size_t> masks(k);
    std::size_t operand_mask = 0;
    for (int i = 0; i < k; ++i) {
        masks[i] = std::size_t{1} << (n - 1 - g.operands[i]);
        operand_mask |= masks[i];
    }
    std::vector<Cx> sub(sub_dim), mixed(sub_dim);
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & operand_mask) continue;
        for (std::size_t j = 0; j < sub_dim; ++j) {
            std::size_t idx = base;
            for (int i = 0; i < k; ++i)
                if ((j >> (k - 1 - i)) & 1u) idx |= masks[i];
            sub[j] = amps[idx];
        }
        for (std::size_t r = 0; r < sub_dim; ++r) {
            Cx acc{0.0, 0.0};
            for (std::size_t cidx = 0; cidx < sub_dim; ++cidx) acc += u.at(r, cidx) * sub[cidx];
            mixed[r] = acc;
        }
        for (std::size_t j = 0; j < sub_dim; ++j) {
            std::size_t idx = base;
            for (int i = 0; i < k; ++i)
                if ((j >> (k - 1 - i)) & 1u) idx |= masks[i];
            amps[idx] = mixed[j];
        }
    }
}

inline void check_operands(int n, const Gate& g) {
    for (int q : g.operands)
        if (q >= n)
            throw DimensionMismatch("gate operand " + std::to_string(q) +
                                    " outside register of " + std::to_string(n) + " qubits");
}

}  // namespace detail

inline StateVector apply_gate(const StateVector& state, const Gate& g) {
    const int n = state.num_qubits();
    detail::check_operands(n, g);
    std::vector<Cx> amps = state.amplitudes;
    detail::apply_gate_inplace(amps, n, g);
    return StateVector(state.dim, std::move(amps));
}

inline StateVector run_circuit(const Circuit& c, const StateVector& initial) {
    const int n = initial.num_qubits();
    if (n != c.num_qubits)
        throw DimensionMismatch("circuit width does not match state dimension");
    std::vector<Cx> amps = initial.amplitudes;
    for (const auto& g : c.gates) detail::apply_gate_inplace(amps, n, g);
    return StateVector(initial.dim, std::move(amps));
}

inline StateVector run_circuit(const Circuit& c) {
    return run_circuit(c, StateVector::zero_state(c.num_qubits));
}

inline Distribution measure_all(const StateVector& state) {
    Distribution dist{state.dim, std::vector<double>(state.dim)};
    for (std::size_t k = 0; k < state.dim; ++k) dist.probabilities[k] = std::norm(state.amplitudes[k]);
    return dist;
}

// Marginal of qubit j, summing basis probabilities in ascending index order.
inline std::pair<double, double> measure_qubit(const StateVector& state, int j) {
    const int n = state.num_qubits();
    if (j < 0 || j >= n) throw IndexOutOfRange("measured qubit outside register");
    const Distribution dist = measure_all(state);
    double p0 = 0.0, p1 = 0.0;
    for (std::size_t k = 0; k < state.dim; ++k) {
        if (qubit_bit(k, j, n) == 0)
            p0 += dist.probabilities[k];
        else
            p1 += dist.probabilities[k];
    }
    return {p0, p1};
}

// Dense unitary realized by a circuit, built column by column.
inline DenseMatrix unitary_of(const Circuit& c) {
    const std::size_t d = std::size_t{1} << c.num_qubits;
    DenseMatrix u(d);
    for (std::size_t col = 0; col < d; ++col) {
        std::vector<Cx> amps(d, Cx{0.0, 0.0});
        amps[col] = 1.0;
        for (const auto& g : c.gates) detail::apply_gate_inplace(amps, c.num_qubits, g);
        for (std::size_t row = 0; row < d; ++row) u.at(row, col) = amps[row];
    }
    return u;
}

// 2x2 reduced density matrix of qubit j (trace over the rest).
inline std::array<Cx, 4> reduced_density(const StateVector& state, int j) {
    const int n = state.num_qubits();
    if (j < 0 || j >= n) throw IndexOutOfRange("qubit outside register");
    std::array<Cx, 4> rho{Cx{0, 0}, Cx{0, 0}, Cx{0, 0}, Cx{0, 0}};
    for (std::size_t k = 0; k < state.dim; ++k) {
        const std::size_t k0 = set_qubit_bit(k, j, n, 0);
        if (k != k0) continue;  // enumerate bit-0 representatives once
        const std::size_t k1 = set_qubit_bit(k, j, n, 1);
        const Cx a0 = state.amplitudes[k0], a1 = state.amplitudes[k1];
        rho[0] += a0 * std::conj(a0);
        rho[1] += a0 * std::conj(a1);
        rho[2] += a1 * std::conj(a0);
        rho[3] += a1 * std::conj(a1);
    }
    return rho;
}

}  // namespace qpa
