// gates.hpp
// Defining unitaries of the gate set. H and U1 follow the standard matrix
// forms; Z, S and T carry their exact entries (U1 at pi, pi/2, pi/4).

#pragma once

#include <cmath>

#include "qpa/core.hpp"
#include "qpa/dense.hpp"

namespace qpa {

inline Cx phase_factor(double lambda) { return Cx{std::cos(lambda), std::sin(lambda)}; }

inline DenseMatrix gate_matrix(const Gate& g) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
        case GateKind::X: {
            DenseMatrix m(2);
            m.at(0, 1) = m.at(1, 0) = 1.0;
            return m;
        }
        case GateKind::Z: {
            DenseMatrix m = DenseMatrix::identity(2);
            m.at(1, 1) = -1.0;
            return m;
        }
        case GateKind::H: {
            DenseMatrix m(2);
            m.at(0, 0) = m.at(0, 1) = m.at(1, 0) = inv_sqrt2;
            m.at(1, 1) = -inv_sqrt2;
            return m;
        }
        case GateKind::S: {
            DenseMatrix m = DenseMatrix::identity(2);
            m.at(1, 1) = Cx{0.0, 1.0};
            return m;
        }
        case GateKind::T: {
            DenseMatrix m = DenseMatrix::identity(2);
            m.at(1, 1) = Cx{inv_sqrt2, inv_sqrt2};
            return m;
        }
        case GateKind::U1: {
            DenseMatrix m = DenseMatrix::identity(2);
            m.at(1, 1) = phase_factor(g.param);
            return m;
        }
        case GateKind::CNOT: {
            // local basis |control target>, control is the high bit
            DenseMatrix m = DenseMatrix::identity(4);
            m.at(2, 2) = m.at(3, 3) = 0.0;
            m.at(2, 3) = m.at(3, 2) = 1.0;
            return m;
        }
        case GateKind::CPHASE: {
            DenseMatrix m = DenseMatrix::identity(4);
            m.at(3, 3) = phase_factor(g.param);
            return m;
        }
        case GateKind::SWAP: {
            DenseMatrix m = DenseMatrix::identity(4);
            m.at(1, 1) = m.at(2, 2) = 0.0;
            m.at(1, 2) = m.at(2, 1) = 1.0;
            return m;
        }
        case GateKind::TOFFOLI: {
            DenseMatrix m = DenseMatrix::identity(8);
            m.at(6, 6) = m.at(7, 7) = 0.0;
            m.at(6, 7) = m.at(7, 6) = 1.0;
            return m;
        }
    }
    throw InternalInconsistency("gate_matrix: unknown kind");
}

}  // namespace qpa
