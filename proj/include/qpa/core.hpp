// core.hpp
// Shared domain types: gates, circuits, permutation specs, qubit labelings.
//
// Bit convention used throughout: qubit 0 is the MOST significant bit of a
// basis-state index, i.e. |q0 q1 ... q_{n-1}> has index
// q0*2^{n-1} + q1*2^{n-2} + ... + q_{n-1}*2^0.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpa {

using Cx = std::complex<double>;

constexpr double kNormTol  = 1e-10;
constexpr double kPhaseTol = 1e-9;

// ── errors ───────────────────────────────────────────────────────────────

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct IndexOutOfRange : std::runtime_error {
    explicit IndexOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedDimension : std::runtime_error {
    explicit UnsupportedDimension(const std::string& what) : std::runtime_error(what) {}
};

struct InternalInconsistency : std::runtime_error {
    explicit InternalInconsistency(const std::string& what) : std::runtime_error(what) {}
};

struct UnroutableCircuit : std::runtime_error {
    explicit UnroutableCircuit(const std::string& what) : std::runtime_error(what) {}
};

struct MissingCalibration : std::runtime_error {
    explicit MissingCalibration(const std::string& what) : std::runtime_error(what) {}
};

struct WeightMismatch : std::runtime_error {
    explicit WeightMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// ── gates ────────────────────────────────────────────────────────────────

enum class GateKind { X, Z, H, S, T, U1, CNOT, CPHASE, SWAP, TOFFOLI };

inline int gate_arity(GateKind k) {
    switch (k) {
        case GateKind::X:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::S:
        case GateKind::T:
        case GateKind::U1:
            return 1;
        case GateKind::CNOT:
        case GateKind::CPHASE:
        case GateKind::SWAP:
            return 2;
        case GateKind::TOFFOLI:
            return 3;
    }
    throw InternalInconsistency("gate_arity: unknown kind");
}

inline bool gate_has_param(GateKind k) {
    return k == GateKind::U1 || k == GateKind::CPHASE;
}

inline const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::X:       return "X";
        case GateKind::Z:       return "Z";
        case GateKind::H:       return "H";
        case GateKind::S:       return "S";
        case GateKind::T:       return "T";
        case GateKind::U1:      return "U1";
        case GateKind::CNOT:    return "CNOT";
        case GateKind::CPHASE:  return "CPHASE";
        case GateKind::SWAP:    return "SWAP";
        case GateKind::TOFFOLI: return "TOFFOLI";
    }
    throw InternalInconsistency("gate_name: unknown kind");
}

inline GateKind gate_kind_from_name(const std::string& s) {
    if (s == "X") return GateKind::X;
    if (s == "Z") return GateKind::Z;
    if (s == "H") return GateKind::H;
    if (s == "S") return GateKind::S;
    if (s == "T") return GateKind::T;
    if (s == "U1") return GateKind::U1;
    if (s == "CNOT") return GateKind::CNOT;
    if (s == "CPHASE") return GateKind::CPHASE;
    if (s == "SWAP") return GateKind::SWAP;
    if (s == "TOFFOLI") return GateKind::TOFFOLI;
    throw ParseError("unknown gate name: " + s);
}

// A single gate application. Operands are qubit line indices, controls
// listed before the target where the distinction exists.
struct Gate {
    GateKind kind;
    std::vector<int> operands;
    double param = 0.0;  // angle in radians; only U1 and CPHASE use it

    Gate(GateKind k, std::vector<int> ops, double p = 0.0)
        : kind(k), operands(std::move(ops)), param(p) {
        validate();
    }

    void validate() const {
        if (static_cast<int>(operands.size()) != gate_arity(kind))
            throw DimensionMismatch(std::string("operand count does not match arity of ") +
                                    gate_name(kind));
        for (std::size_t i = 0; i < operands.size(); ++i) {
            if (operands[i] < 0)
                throw IndexOutOfRange("negative qubit index");
            for (std::size_t j = i + 1; j < operands.size(); ++j)
                if (operands[i] == operands[j])
                    throw DimensionMismatch("gate operands must be distinct");
        }
    }

    bool operator==(const Gate& o) const {
        return kind == o.kind && operands == o.operands && param == o.param;
    }
};

// ── circuit ──────────────────────────────────────────────────────────────

struct Circuit {
    int num_qubits = 1;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int n) : num_qubits(n) {
        if (n < 1) throw DimensionMismatch("circuit needs at least one qubit");
    }

    Circuit& add(Gate g) {
        for (int q : g.operands)
            if (q >= num_qubits)
                throw IndexOutOfRange("gate operand " + std::to_string(q) +
                                      " outside circuit of " + std::to_string(num_qubits) +
                                      " qubits");
        gates.push_back(std::move(g));
        return *this;
    }

    Circuit& x(int q) { return add(Gate(GateKind::X, {q})); }
    Circuit& z(int q) { return add(Gate(GateKind::Z, {q})); }
    Circuit& h(int q) { return add(Gate(GateKind::H, {q})); }
    Circuit& s(int q) { return add(Gate(GateKind::S, {q})); }
    Circuit& t(int q) { return add(Gate(GateKind::T, {q})); }
    Circuit& u1(double lambda, int q) { return add(Gate(GateKind::U1, {q}, lambda)); }
    Circuit& cnot(int control, int target) { return add(Gate(GateKind::CNOT, {control, target})); }
    Circuit& cphase(double lambda, int a, int b) { return add(Gate(GateKind::CPHASE, {a, b}, lambda)); }
    Circuit& swap(int a, int b) { return add(Gate(GateKind::SWAP, {a, b})); }
    Circuit& toffoli(int c1, int c2, int target) { return add(Gate(GateKind::TOFFOLI, {c1, c2, target})); }

    Circuit& append(const Circuit& other) {
        if (other.num_qubits > num_qubits)
            throw DimensionMismatch("appended circuit is wider than the target");
        for (const auto& g : other.gates) add(g);
        return *this;
    }

    std::size_t size() const { return gates.size(); }
    bool empty() const { return gates.empty(); }
};

// ── permutation specification ────────────────────────────────────────────

enum class Parity { positive, negative };

inline char parity_char(Parity p) { return p == Parity::positive ? '+' : '-'; }

inline Parity parity_from_char(char c) {
    if (c == '+') return Parity::positive;
    if (c == '-') return Parity::negative;
    throw ParseError(std::string("bad parity character: ") + c);
}

// Identifies the cyclic permutation P_m^± over d basis states:
// positive maps |k> to |(m+k) mod d>, negative maps |k> to |(m-k) mod d>.
struct PermutationSpec {
    std::size_t d;
    std::size_t m;
    Parity parity;

    PermutationSpec(std::size_t dim, std::size_t shift, Parity p)
        : d(dim), m(shift), parity(p) {
        if (d < 2) throw UnsupportedDimension("permutation dimension must be >= 2");
        if (m >= d) throw IndexOutOfRange("shift m must lie in [0, d-1]");
    }

    std::size_t apply(std::size_t k) const {
        if (k >= d) throw IndexOutOfRange("basis index outside dimension");
        return parity == Parity::positive ? (m + k) % d : (m + d - k % d) % d;
    }
};

// ── qubit labeling ───────────────────────────────────────────────────────

// Bijective map from logical qubit index (0 = most significant) onto a set
// of physical qubit ids (or renamed circuit wires).
struct QubitLabeling {
    std::vector<int> to_physical;

    QubitLabeling() = default;
    explicit QubitLabeling(std::vector<int> mapping) : to_physical(std::move(mapping)) {
        for (std::size_t i = 0; i < to_physical.size(); ++i)
            for (std::size_t j = i + 1; j < to_physical.size(); ++j)
                if (to_physical[i] == to_physical[j])
                    throw DimensionMismatch("qubit labeling must be injective");
    }

    static QubitLabeling identity(int n) {
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = i;
        return QubitLabeling(std::move(v));
    }

    int size() const { return static_cast<int>(to_physical.size()); }

    int operator()(int logical) const {
        if (logical < 0 || logical >= size())
            throw IndexOutOfRange("logical qubit outside labeling");
        return to_physical[logical];
    }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (to_physical[i] != i) return false;
        return true;
    }

    bool operator==(const QubitLabeling& o) const { return to_physical == o.to_physical; }
};

// ── helpers ──────────────────────────────────────────────────────────────

// Bit of basis index `index` belonging to qubit j under the q0-most-significant
// convention, for an n-qubit register.
inline int qubit_bit(std::size_t index, int j, int n) {
    return static_cast<int>((index >> (n - 1 - j)) & 1u);
}

inline std::size_t set_qubit_bit(std::size_t index, int j, int n, int value) {
    const std::size_t mask = std::size_t{1} << (n - 1 - j);
    return value ? (index | mask) : (index & ~mask);
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

// ── circuit text format ──────────────────────────────────────────────────
//
// Line-oriented, one gate per line after a `qubits N` header:
//   GATE[,param] q_i[,q_j[,q_k]]
// Lines starting with '#' and blank lines are ignored. Round-trips exactly
// (parameters are printed with 17 significant digits).

inline std::string to_text(const Circuit& c) {
    std::ostringstream out;
    out << "qubits " << c.num_qubits << "\n";
    for (const auto& g : c.gates) {
        out << gate_name(g.kind);
        if (gate_has_param(g.kind)) out << ',' << format_double(g.param);
        out << ' ';
        for (std::size_t i = 0; i < g.operands.size(); ++i) {
            if (i) out << ',';
            out << g.operands[i];
        }
        out << "\n";
    }
    return out.str();
}

inline Circuit circuit_from_text(std::istream& in) {
    std::string line;
    int lineno = 0;
    Circuit c;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (!have_header) {
            if (head != "qubits")
                throw ParseError("line " + std::to_string(lineno) +
                                 ": expected `qubits N` header");
            int n = 0;
            if (!(ls >> n) || n < 1)
                throw ParseError("line " + std::to_string(lineno) + ": bad qubit count");
            c = Circuit(n);
            have_header = true;
            continue;
        }
        std::string kind_part = head;
        double param = 0.0;
        bool has_param = false;
        if (auto comma = head.find(','); comma != std::string::npos) {
            kind_part = head.substr(0, comma);
            try {
                param = std::stod(head.substr(comma + 1));
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) + ": bad gate parameter");
            }
            has_param = true;
        }
        GateKind kind = gate_kind_from_name(kind_part);
        if (gate_has_param(kind) != has_param)
            throw ParseError("line " + std::to_string(lineno) + ": parameter mismatch for " +
                             kind_part);
        std::string ops_part;
        ls >> ops_part;
        if (ops_part.empty())
            throw ParseError("line " + std::to_string(lineno) + ": missing operands");
        std::vector<int> ops;
        std::istringstream os(ops_part);
        std::string tok;
        while (std::getline(os, tok, ',')) {
            try {
                ops.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) + ": bad operand `" + tok + "`");
            }
        }
        try {
            c.add(Gate(kind, std::move(ops), param));
        } catch (const std::exception& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_header) throw ParseError("empty circuit file (missing `qubits N` header)");
    return c;
}

inline Circuit circuit_from_text(const std::string& text) {
    std::istringstream in(text);
    return circuit_from_text(in);
}

}  // namespace qpa
