// reference.hpp
// Direct d-dimensional model of the permutation-parity problem: permutation
// matrices, the discrete Fourier transform, the dense end-to-end pipeline
// F† P F |1>, and the two-query classical baseline. Works for any d >= 2,
// not only powers of two, and serves as ground truth for the circuit layer.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "qpa/core.hpp"
#include "qpa/dense.hpp"

namespace qpa {

// P_m^± of the cyclic family: entry [(m ± k) mod d, k] = 1 for every column k.
inline DenseMatrix permutation_matrix(const PermutationSpec& spec) {
    DenseMatrix m(spec.d);
    for (std::size_t k = 0; k < spec.d; ++k) m.at(spec.apply(k), k) = 1.0;
    return m;
}

// DFT with the positive-exponent convention F[j][k] = e^{+2πi jk/d}/√d, so
// that F|1> is the uniform superposition carrying the d-th roots of unity.
inline DenseMatrix dft_matrix(std::size_t d) {
    if (d < 2) throw UnsupportedDimension("dft_matrix needs d >= 2");
    DenseMatrix m(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
            const double angle =
                2.0 * std::numbers::pi * static_cast<double>((j * k) % d) / static_cast<double>(d);
            m.at(j, k) = Cx{std::cos(angle) * scale, std::sin(angle) * scale};
        }
    return m;
}

struct ReferenceOutcome {
    std::size_t outcome;  // basis index holding all the probability
    Cx phase;             // its amplitude (unit modulus)

    double phase_arg() const { return std::arg(phase); }  // principal value in (-pi, pi]
};

// Dense evaluation of the full pipeline F† · P_m^± · F on |1>. The result is
// a single basis state: index 1 for positive parity, d-1 for negative.
inline ReferenceOutcome reference_qpa(const PermutationSpec& spec) {
    const DenseMatrix f = dft_matrix(spec.d);
    std::vector<Cx> state(spec.d, Cx{0.0, 0.0});
    state[1] = 1.0;
    state = f * state;
    std::vector<Cx> permuted(spec.d, Cx{0.0, 0.0});
    for (std::size_t k = 0; k < spec.d; ++k) permuted[spec.apply(k)] = state[k];
    state = adjoint(f) * permuted;
    for (std::size_t k = 0; k < spec.d; ++k) {
        if (std::abs(std::abs(state[k]) - 1.0) <= kPhaseTol)
            return ReferenceOutcome{k, state[k]};
    }
    throw InternalInconsistency("reference_qpa: no basis state reached unit probability");
}

using PermutationOracle = std::function<std::size_t(std::size_t)>;

struct ClassicalResult {
    Parity parity;
    int queries_used;
};

// Two-query classical baseline: |0> reveals m, |1> disambiguates the sign.
// For d = 2 the two parities coincide as operators and positive is reported.
inline ClassicalResult classical_parity(const PermutationOracle& oracle, std::size_t d) {
    if (d < 2) throw UnsupportedDimension("classical_parity needs d >= 2");
    const std::size_t m = oracle(0);
    const std::size_t image_of_one = oracle(1);
    const Parity parity =
        image_of_one == (m + 1) % d ? Parity::positive : Parity::negative;
    return ClassicalResult{d == 2 ? Parity::positive : parity, 2};
}

inline PermutationOracle make_oracle(const PermutationSpec& spec) {
    return [spec](std::size_t k) { return spec.apply(k); };
}

}  // namespace qpa
