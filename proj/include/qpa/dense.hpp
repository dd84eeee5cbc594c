// dense.hpp
// Small dense complex matrices used by the reference model and by
// equivalence checks. Row-major, value semantics.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qpa/core.hpp"

namespace qpa {

struct DenseMatrix {
    std::size_t dim = 0;
    std::vector<Cx> entries;  // row-major, dim*dim

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t d) : dim(d), entries(d * d, Cx{0.0, 0.0}) {}

    static DenseMatrix identity(std::size_t d) {
        DenseMatrix m(d);
        for (std::size_t i = 0; i < d; ++i) m.at(i, i) = Cx{1.0, 0.0};
        return m;
    }

    Cx& at(std::size_t row, std::size_t col) { return entries[row * dim + col]; }
    const Cx& at(std::size_t row, std::size_t col) const { return entries[row * dim + col]; }
};

inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.dim != b.dim) throw DimensionMismatch("matrix product dimension mismatch");
    DenseMatrix out(a.dim);
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t k = 0; k < a.dim; ++k) {
            const Cx aik = a.at(i, k);
            if (aik == Cx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < a.dim; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

inline std::vector<Cx> operator*(const DenseMatrix& a, const std::vector<Cx>& v) {
    if (a.dim != v.size()) throw DimensionMismatch("matrix-vector dimension mismatch");
    std::vector<Cx> out(a.dim, Cx{0.0, 0.0});
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j) out[i] += a.at(i, j) * v[j];
    return out;
}

inline DenseMatrix adjoint(const DenseMatrix& a) {
    DenseMatrix out(a.dim);
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j) out.at(i, j) = std::conj(a.at(j, i));
    return out;
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.dim != b.dim) throw DimensionMismatch("matrix comparison dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        worst = std::max(worst, std::abs(a.entries[i] - b.entries[i]));
    return worst;
}

inline bool approx_equal(const DenseMatrix& a, const DenseMatrix& b, double tol = kPhaseTol) {
    return a.dim == b.dim && max_abs_diff(a, b) <= tol;
}

// Equality up to a global phase: the phase is fixed by the first entry of
// `a` (row-major) with modulus above tol, then compared entrywise.
inline bool equal_up_to_global_phase(const DenseMatrix& a, const DenseMatrix& b,
                                     double tol = kPhaseTol) {
    if (a.dim != b.dim) return false;
    std::size_t pivot = a.entries.size();
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (std::abs(a.entries[i]) > tol) {
            pivot = i;
            break;
        }
    }
    if (pivot == a.entries.size()) return approx_equal(a, b, tol);
    if (std::abs(b.entries[pivot]) <= tol) return false;
    const Cx phase = b.entries[pivot] / a.entries[pivot];
    if (std::abs(std::abs(phase) - 1.0) > tol) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        if (std::abs(a.entries[i] * phase - b.entries[i]) > tol) return false;
    return true;
}

inline bool is_unitary(const DenseMatrix& m, double tol = 1e-12) {
    return approx_equal(m * adjoint(m), DenseMatrix::identity(m.dim), tol);
}

}  // namespace qpa
