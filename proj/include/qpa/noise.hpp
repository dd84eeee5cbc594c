// noise.hpp
// Calibration data model, analytic circuit error estimation and Monte Carlo
// noisy execution.
//
// Gate failures are modeled as independent Bernoulli events at the
// calibrated error probability; a failing gate applies a uniformly random
// Pauli on its support (a completely depolarizing channel). Readout flips
// each measured bit with its qubit's readout error. T1/T2 and frequency are
// stored calibration data only; an optional excited-state relaxation
// probability can bias |1> outcomes toward |0> and defaults to zero.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qpa/builder.hpp"
#include "qpa/core.hpp"
#include "qpa/sampling.hpp"
#include "qpa/simulator.hpp"

namespace qpa {

// ── calibration ──────────────────────────────────────────────────────────

struct QubitCalibration {
    double frequency_ghz = 0.0;
    double t1_us = 0.0;
    double t2_us = 0.0;
    double gate_error = 0.0;
    double readout_error = 0.0;
    double relax_prob = 0.0;  // optional |1> -> |0> bias before readout

    void validate() const {
        if (gate_error < 0.0 || gate_error > 1.0 || readout_error < 0.0 || readout_error > 1.0 ||
            relax_prob < 0.0 || relax_prob > 1.0)
            throw MissingCalibration("error probabilities must lie in [0, 1]");
        if (t1_us <= 0.0 || t2_us <= 0.0)
            throw MissingCalibration("T1 and T2 must be positive");
    }
};

struct CalibrationConfig {
    std::string note;
    std::map<int, QubitCalibration> qubits;
    std::map<std::pair<int, int>, double> cnot_errors;  // directed (control, target)

    const QubitCalibration& qubit(int id) const {
        auto it = qubits.find(id);
        if (it == qubits.end())
            throw MissingCalibration("no calibration for qubit " + std::to_string(id));
        return it->second;
    }

    double cnot_error(int control, int target) const {
        auto it = cnot_errors.find({control, target});
        if (it == cnot_errors.end())
            throw MissingCalibration("no calibration for CNOT edge " + std::to_string(control) +
                                     "->" + std::to_string(target));
        return it->second;
    }

    static CalibrationConfig all_zero(int num_qubits) {
        CalibrationConfig cfg;
        cfg.note = "noise-free reference calibration";
        for (int q = 0; q < num_qubits; ++q)
            cfg.qubits[q] = QubitCalibration{5.0, 50.0, 50.0, 0.0, 0.0, 0.0};
        for (int c = 0; c < num_qubits; ++c)
            for (int t = 0; t < num_qubits; ++t)
                if (c != t) cfg.cnot_errors[{c, t}] = 0.0;
        return cfg;
    }

    static CalibrationConfig from_json(const nlohmann::json& j) {
        CalibrationConfig cfg;
        if (j.contains("note")) cfg.note = j.at("note").get<std::string>();
        for (const auto& q : j.at("qubits")) {
            QubitCalibration cal;
            cal.frequency_ghz = q.at("f").get<double>();
            cal.t1_us = q.at("T1").get<double>();
            cal.t2_us = q.at("T2").get<double>();
            cal.gate_error = q.at("e_g").get<double>();
            cal.readout_error = q.at("e_r").get<double>();
            if (q.contains("relax_prob")) cal.relax_prob = q.at("relax_prob").get<double>();
            cal.validate();
            cfg.qubits[q.at("id").get<int>()] = cal;
        }
        for (const auto& e : j.at("edges"))
            cfg.cnot_errors[{e.at("control").get<int>(), e.at("target").get<int>()}] =
                e.at("e_cx").get<double>();
        return cfg;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        if (!note.empty()) j["note"] = note;
        auto qubits_arr = nlohmann::ordered_json::array();
        for (const auto& [id, cal] : qubits) {
            nlohmann::ordered_json q;
            q["id"] = id;
            q["f"] = cal.frequency_ghz;
            q["T1"] = cal.t1_us;
            q["T2"] = cal.t2_us;
            q["e_g"] = cal.gate_error;
            q["e_r"] = cal.readout_error;
            if (cal.relax_prob != 0.0) q["relax_prob"] = cal.relax_prob;
            qubits_arr.push_back(q);
        }
        j["qubits"] = qubits_arr;
        auto edges_arr = nlohmann::ordered_json::array();
        for (const auto& [edge, e_cx] : cnot_errors) {
            nlohmann::ordered_json e;
            e["control"] = edge.first;
            e["target"] = edge.second;
            e["e_cx"] = e_cx;
            edges_arr.push_back(e);
        }
        j["edges"] = edges_arr;
        return j;
    }
};

struct NoisySimConfig {
    CalibrationConfig calibration;
    QubitLabeling placement;
    std::uint64_t shots = 8192;
    int samples = 5;
    std::uint64_t seed = 0;

    void validate() const {
        if (shots < 1) throw DimensionMismatch("shots must be >= 1");
        if (samples < 1) throw DimensionMismatch("samples must be >= 1");
    }
};

// ── analytic error estimate ──────────────────────────────────────────────

namespace detail {

inline double gate_error_of(const Gate& g, const CalibrationConfig& cal,
                            const QubitLabeling& placement) {
    switch (g.kind) {
        case GateKind::CNOT:
            return cal.cnot_error(placement(g.operands[0]), placement(g.operands[1]));
        case GateKind::SWAP:
        case GateKind::CPHASE:
        case GateKind::TOFFOLI:
            throw MissingCalibration(std::string("no device calibration for non-native gate ") +
                                     gate_name(g.kind) + "; transpile first");
        default:
            return cal.qubit(placement(g.operands[0])).gate_error;
    }
}

}  // namespace detail

// 1 - prod(1 - e_gate) * prod(1 - e_readout): depends only on the gate
// multiset and the measured set, so it is reorder-invariant and
// nondecreasing under gate appending.
inline double circuit_error_estimate(const Circuit& c, const NoisySimConfig& cfg,
                                     const std::vector<int>& measured_qubits) {
    double survive = 1.0;
    for (const auto& g : c.gates)
        survive *= 1.0 - detail::gate_error_of(g, cfg.calibration, cfg.placement);
    for (int q : measured_qubits)
        survive *= 1.0 - cfg.calibration.qubit(cfg.placement(q)).readout_error;
    return 1.0 - survive;
}

// ── Monte Carlo execution ────────────────────────────────────────────────

namespace detail {

inline void apply_random_pauli(std::vector<Cx>& amps, int n, const std::vector<int>& support,
                               SplitMix64& rng) {
    static const Cx y01{0.0, -1.0}, y10{0.0, 1.0};
    for (int q : support) {
        switch (rng.next() & 3u) {
            case 0:
                break;  // identity
            case 1:
                apply_gate_inplace(amps, n, Gate(GateKind::X, {q}));
                break;
            case 2: {  // Pauli Y, inline: it is not part of the logical gate set
                const std::size_t mask = std::size_t{1} << (n - 1 - q);
                for (std::size_t i = 0; i < amps.size(); ++i) {
                    if (i & mask) continue;
                    const Cx a0 = amps[i], a1 = amps[i | mask];
                    amps[i] = y01 * a1;
                    amps[i | mask] = y10 * a0;
                }
                break;
            }
            case 3:
                apply_gate_inplace(amps, n, Gate(GateKind::Z, {q}));
                break;
        }
    }
}

}  // namespace detail

// Runs `cfg.samples` independent samples of `cfg.shots` shots each. Outcome
// bins are indexed by the measured qubits in the order given (first listed
// is the most significant bit). With an all-zero calibration the counts are
// bit-identical to sample(measure_all(...)) under the same derived seeds:
// random draws are consumed only where an error probability is nonzero.
inline std::vector<ShotCounts> noisy_run(const Circuit& pipeline, const NoisySimConfig& cfg,
                                         const std::vector<int>& measured_qubits) {
    cfg.validate();
    const int n = pipeline.num_qubits;
    if (cfg.placement.size() != n) throw DimensionMismatch("placement width != circuit width");
    const int k = static_cast<int>(measured_qubits.size());
    const std::size_t bins = std::size_t{1} << k;

    // precomputed per-gate error probabilities (also validates calibration)
    std::vector<double> gate_errors;
    gate_errors.reserve(pipeline.size());
    bool any_gate_noise = false;
    for (const auto& g : pipeline.gates) {
        const double e = detail::gate_error_of(g, cfg.calibration, cfg.placement);
        gate_errors.push_back(e);
        any_gate_noise = any_gate_noise || e > 0.0;
    }
    std::vector<double> readout, relax;
    for (int q : measured_qubits) {
        const auto& cal = cfg.calibration.qubit(cfg.placement(q));
        readout.push_back(cal.readout_error);
        relax.push_back(cal.relax_prob);
    }

    // marginal over the measured qubits, bit order as listed
    const auto marginal = [&](const std::vector<Cx>& amps) {
        Distribution dist{bins, std::vector<double>(bins, 0.0)};
        for (std::size_t i = 0; i < amps.size(); ++i) {
            std::size_t outcome = 0;
            for (int b = 0; b < k; ++b)
                outcome = (outcome << 1) | static_cast<std::size_t>(qubit_bit(i, measured_qubits[b], n));
            dist.probabilities[outcome] += std::norm(amps[i]);
        }
        return dist;
    };

    std::vector<Cx> ideal_amps;
    std::vector<double> ideal_cum;
    if (!any_gate_noise) {
        ideal_amps = StateVector::zero_state(n).amplitudes;
        for (const auto& g : pipeline.gates) detail::apply_gate_inplace(ideal_amps, n, g);
        ideal_cum = detail::cumulative(marginal(ideal_amps).probabilities);
    }

    std::vector<ShotCounts> result;
    result.reserve(cfg.samples);
    for (int s = 0; s < cfg.samples; ++s) {
        SplitMix64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(s)));
        ShotCounts counts{bins, std::vector<std::uint64_t>(bins, 0), cfg.shots};
        std::vector<Cx> amps;
        for (std::uint64_t shot = 0; shot < cfg.shots; ++shot) {
            const std::vector<double>* cum = &ideal_cum;
            std::vector<double> shot_cum;
            if (any_gate_noise) {
                amps = StateVector::zero_state(n).amplitudes;
                for (std::size_t gi = 0; gi < pipeline.gates.size(); ++gi) {
                    detail::apply_gate_inplace(amps, n, pipeline.gates[gi]);
                    if (gate_errors[gi] > 0.0 && rng.uniform() < gate_errors[gi])
                        detail::apply_random_pauli(amps, n, pipeline.gates[gi].operands, rng);
                }
                shot_cum = detail::cumulative(marginal(amps).probabilities);
                cum = &shot_cum;
            }
            std::size_t outcome = detail::draw_index(*cum, rng.uniform());
            for (int b = 0; b < k; ++b) {
                const std::size_t bit_mask = std::size_t{1} << (k - 1 - b);
                if (relax[b] > 0.0 && (outcome & bit_mask) && rng.uniform() < relax[b])
                    outcome &= ~bit_mask;
                if (readout[b] > 0.0 && rng.uniform() < readout[b]) outcome ^= bit_mask;
            }
            ++counts.counts[outcome];
        }
        result.push_back(std::move(counts));
    }
    return result;
}

// ── success statistics ───────────────────────────────────────────────────

// Fraction of shots on the theoretically correct outcome: the qubit-1 bit
// for the optimized scheme (1 for +, 0 for -), the full index 1 or d-1 for
// the original scheme.
inline double success_probability(const ShotCounts& counts, const PermutationSpec& spec,
                                  const QpaScheme& scheme) {
    std::size_t correct;
    if (scheme.variant == SchemeVariant::optimized) {
        if (counts.dim != 2)
            throw DimensionMismatch("optimized scheme expects single-qubit counts");
        correct = spec.parity == Parity::positive ? 1 : 0;
    } else {
        if (counts.dim != spec.d)
            throw DimensionMismatch("original scheme expects full-register counts");
        correct = spec.parity == Parity::positive ? 1 : spec.d - 1;
    }
    return static_cast<double>(counts.counts[correct]) / static_cast<double>(counts.shots);
}

struct AverageSuccess {
    double mean = 0.0;
    double margin = 0.0;
    bool n_sufficient = true;  // the N > 9dC/(1-C) normality condition
};

// Weighted ensemble success over all 2d permutation operators and the
// standard-error margin for N single-shot classifications; d is inferred as
// values.size()/2. For uniform weights the margin reduces to
// (1/sqrt(N*d)) * sum_k sqrt(S_k - S_k^2).
inline AverageSuccess average_success(const std::vector<double>& values,
                                      const std::vector<double>& weights, double ensemble_n) {
    if (values.empty() || values.size() % 2 != 0)
        throw WeightMismatch("need a nonempty, even-sized value list (one per P_m^+-)");
    if (weights.size() != values.size())
        throw WeightMismatch("one weight per success value required");
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw WeightMismatch("weights must be nonnegative");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9) throw WeightMismatch("weights must sum to 1");
    if (ensemble_n < 1.0) throw WeightMismatch("ensemble size must be >= 1");

    const double ops = static_cast<double>(values.size());
    const double d = ops / 2.0;
    AverageSuccess out;
    double spread = 0.0;
    double cmax = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (v < 0.0 || v > 1.0) throw WeightMismatch("success values must lie in [0, 1]");
        out.mean += weights[i] * v;
        spread += weights[i] * std::sqrt(std::max(0.0, v - v * v));
        cmax = std::max(cmax, v);
    }
    out.margin = ops / std::sqrt(ensemble_n * d) * spread;
    out.n_sufficient = cmax < 1.0 && ensemble_n > 9.0 * d * cmax / (1.0 - cmax);
    return out;
}

inline nlohmann::ordered_json to_json(const ShotCounts& counts) {
    nlohmann::ordered_json j;
    j["dim"] = counts.dim;
    j["values"] = counts.counts;
    j["shots"] = counts.shots;
    return j;
}

inline nlohmann::ordered_json to_json(const Distribution& dist) {
    nlohmann::ordered_json j;
    j["dim"] = dist.dim;
    j["values"] = dist.probabilities;
    return j;
}

}  // namespace qpa
