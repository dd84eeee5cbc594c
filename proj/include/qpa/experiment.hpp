// experiment.hpp
// Experiment harness: runs a full 2d-operator suite for one scheme, ideal
// and noisy, and assembles a self-contained report (JSON + CSV). Also the
// scaling table and the on-demand verification suite behind `qpa verify`.

#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "qpa/builder.hpp"
#include "qpa/noise.hpp"
#include "qpa/reference.hpp"
#include "qpa/transpiler.hpp"

namespace qpa {

// Physical qubit assignments used in the experiments: logical (q0, q1[, q2])
// onto device qubits. They matter only for calibration lookup.
inline QubitLabeling placement_preset(SchemeVariant variant, int n) {
    if (n == 2 && variant == SchemeVariant::optimized) return QubitLabeling({1, 0});  // ibmqx2
    if (n == 2 && variant == SchemeVariant::original) return QubitLabeling({3, 2});   // ibmqx4
    if (n == 3) return QubitLabeling({4, 3, 2});                                      // ibmqx4
    return QubitLabeling::identity(n);
}

inline CouplingMap coupling_preset(const std::string& name) {
    if (name == "ibmqx2") return CouplingMap::ibmqx2();
    if (name == "ibmqx4") return CouplingMap::ibmqx4();
    throw ParseError("unknown coupling map preset: " + name);
}

inline std::string default_map_name(SchemeVariant variant, int n) {
    return (n == 2 && variant == SchemeVariant::optimized) ? "ibmqx2" : "ibmqx4";
}

struct ExperimentOptions {
    SchemeVariant scheme = SchemeVariant::optimized;
    int n = 2;
    bool ideal = false;
    std::optional<CouplingMap> map;          // defaults to the scheme's device
    std::optional<QubitLabeling> placement;  // defaults to the preset device assignment
    std::optional<CalibrationConfig> calibration;
    std::string map_name;
    std::string calibration_id;
    std::uint64_t shots = 8192;
    int samples = 5;
    std::uint64_t seed = 20171005;
    double ensemble_n = 1e5;  // N in the average-success margin
};

struct SpecResult {
    PermutationSpec spec;
    Distribution ideal_distribution;          // over logical basis states
    double ideal_qubit1_p0 = 0.0, ideal_qubit1_p1 = 0.0;
    std::map<std::string, int> gate_counts;   // logical pipeline
    std::optional<TranspileReport> transpile_report;
    std::vector<ShotCounts> noisy_counts;     // one per sample
    std::vector<double> success_per_sample;
    double success = 1.0;                     // ideal probability or noisy mean
};

struct ExperimentReport {
    ExperimentOptions options;
    std::vector<SpecResult> specs;
    double average = 0.0;
    double margin = 0.0;
    bool n_sufficient = true;
    std::string timestamp;
};

namespace detail {

inline std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}  // namespace detail

// Runs the full 2d-spec suite. For the optimized scheme only qubit 1 is
// read out; the original scheme measures the whole register, reordered
// through the transpiler's relabeling so counts are indexed logically.
inline ExperimentReport run_experiment(const ExperimentOptions& options) {
    ExperimentReport report;
    report.options = options;
    report.timestamp = detail::iso_timestamp();
    const QpaScheme scheme(options.scheme, options.n);
    const bool noisy = !options.ideal && options.calibration.has_value();

    CouplingMap map = options.map.value_or(coupling_preset(default_map_name(options.scheme, options.n)));
    QubitLabeling placement =
        options.placement.value_or(placement_preset(options.scheme, options.n));

    std::vector<double> successes;
    for (const auto& spec : all_specs(options.n)) {
        SpecResult res{spec, {}, 0, 0, {}, {}, {}, {}, 1.0};
        const Circuit pipeline = build_pipeline(scheme, spec);
        res.gate_counts = count_by_kind(pipeline);

        const StateVector final_state = run_circuit(pipeline);
        res.ideal_distribution = measure_all(final_state);
        std::tie(res.ideal_qubit1_p0, res.ideal_qubit1_p1) = measure_qubit(final_state, 1);

        if (options.scheme == SchemeVariant::optimized)
            res.success = spec.parity == Parity::positive ? res.ideal_qubit1_p1
                                                          : res.ideal_qubit1_p0;
        else
            res.success = res.ideal_distribution
                              .probabilities[spec.parity == Parity::positive ? 1 : spec.d - 1];

        if (noisy) {
            auto [lowered, treport] = transpile(pipeline, map, placement);
            res.transpile_report = treport;
            NoisySimConfig cfg{*options.calibration, placement, options.shots, options.samples,
                               derive_seed(options.seed, spec.m * 2 +
                                                             (spec.parity == Parity::negative))};
            std::vector<int> measured;
            if (options.scheme == SchemeVariant::optimized) {
                measured = {treport.labeling_after(1)};
            } else {
                for (int q = 0; q < options.n; ++q) measured.push_back(treport.labeling_after(q));
            }
            res.noisy_counts = noisy_run(lowered, cfg, measured);
            double acc = 0.0;
            for (const auto& counts : res.noisy_counts) {
                const double s = success_probability(counts, spec, scheme);
                res.success_per_sample.push_back(s);
                acc += s;
            }
            res.success = acc / static_cast<double>(res.noisy_counts.size());
        }
        successes.push_back(res.success);
        report.specs.push_back(std::move(res));
    }

    const std::vector<double> uniform(successes.size(), 1.0 / static_cast<double>(successes.size()));
    const AverageSuccess avg = average_success(successes, uniform, options.ensemble_n);
    report.average = avg.mean;
    report.margin = avg.margin;
    report.n_sufficient = avg.n_sufficient;
    return report;
}

// ── serialization ────────────────────────────────────────────────────────

inline nlohmann::ordered_json to_json(const ExperimentReport& r) {
    nlohmann::ordered_json j;
    j["scheme"] = scheme_name(r.options.scheme);
    j["n"] = r.options.n;
    j["ideal"] = r.options.ideal || !r.options.calibration.has_value();
    j["shots"] = r.options.shots;
    j["samples"] = r.options.samples;
    j["seed"] = r.options.seed;
    j["ensemble_n"] = r.options.ensemble_n;
    j["map"] = r.options.map_name.empty() ? default_map_name(r.options.scheme, r.options.n)
                                          : r.options.map_name;
    j["placement"] =
        r.options.placement.value_or(placement_preset(r.options.scheme, r.options.n)).to_physical;
    j["calibration_id"] = r.options.calibration_id;
    if (r.options.calibration.has_value())
        j["calibration"] = r.options.calibration->to_json();
    else
        j["calibration"] = nullptr;
    j["timestamp"] = r.timestamp;

    auto specs = nlohmann::ordered_json::array();
    for (const auto& res : r.specs) {
        nlohmann::ordered_json s;
        s["m"] = res.spec.m;
        s["parity"] = std::string(1, parity_char(res.spec.parity));
        s["ideal_distribution"] = to_json(res.ideal_distribution);
        s["gate_counts"] = res.gate_counts;
        if (res.transpile_report.has_value()) s["transpile"] = res.transpile_report->to_json();
        if (!res.noisy_counts.empty()) {
            auto counts = nlohmann::ordered_json::array();
            for (const auto& c : res.noisy_counts) counts.push_back(to_json(c));
            s["noisy_counts"] = counts;
            s["success_per_sample"] = res.success_per_sample;
        }
        s["success"] = res.success;
        specs.push_back(s);
    }
    j["specs"] = specs;
    j["average_success"] = r.average;
    j["margin"] = r.margin;
    j["n_sufficient"] = r.n_sufficient;
    return j;
}

// Distribution table, one row per (operator, outcome). The same numbers as
// the JSON report, formatted identically (17 significant digits).
inline std::string to_csv(const ExperimentReport& r) {
    std::ostringstream out;
    out << "scheme,n,m,parity,outcome,ideal_prob";
    for (int s = 0; s < r.options.samples && !r.specs.empty() && !r.specs[0].noisy_counts.empty();
         ++s)
        out << ",count_sample" << (s + 1);
    out << ",success\n";
    for (const auto& res : r.specs) {
        for (std::size_t outcome = 0; outcome < res.ideal_distribution.dim; ++outcome) {
            out << scheme_name(r.options.scheme) << ',' << r.options.n << ',' << res.spec.m << ','
                << parity_char(res.spec.parity) << ',' << outcome << ','
                << format_double(res.ideal_distribution.probabilities[outcome]);
            if (!res.noisy_counts.empty()) {
                for (const auto& counts : res.noisy_counts)
                    out << ','
                        << (outcome < counts.dim ? std::to_string(counts.counts[outcome]) : "");
            }
            out << ',' << format_double(res.success) << "\n";
        }
    }
    return out.str();
}

// ── scaling table ────────────────────────────────────────────────────────

// Closed-form gate counts per register width: the optimized scheme needs
// 2n + 2 gates end to end, the original needs the quadratic QFT pair.
inline std::string scaling_csv(int max_n) {
    if (max_n < 1 || max_n > 12) throw ParseError("scaling table supports 1 <= n <= 12");
    std::ostringstream out;
    out << "n,optimized_total,original_prep,qft_h_cphase,qft_swaps,original_total\n";
    for (int n = 1; n <= max_n; ++n)
        out << n << ',' << optimized_gate_total(n) << ',' << 2 * n << ','
            << qft_hadamard_cphase_count(n) << ',' << qft_swap_count(n) << ','
            << original_gate_total(n) << "\n";
    return out.str();
}

// ── verification suite ───────────────────────────────────────────────────

struct VerifyFailure {
    std::string check;
    std::string detail;
};

struct VerifyOutcome {
    int checks_run = 0;
    std::vector<VerifyFailure> failures;
    bool ok() const { return failures.empty(); }
};

namespace detail {

inline std::string first_matrix_mismatch(const DenseMatrix& got, const DenseMatrix& want,
                                         double tol) {
    for (std::size_t r = 0; r < got.dim; ++r)
        for (std::size_t c = 0; c < got.dim; ++c)
            if (std::abs(got.at(r, c) - want.at(r, c)) > tol) {
                std::ostringstream os;
                os << "entry (" << r << "," << c << "): got (" << got.at(r, c).real() << ","
                   << got.at(r, c).imag() << "), want (" << want.at(r, c).real() << ","
                   << want.at(r, c).imag() << ")";
                return os.str();
            }
    return "no mismatch";
}

}  // namespace detail

// Dense equivalence of every builder output against the reference model
// (permutation circuits n <= 4, QFT n <= 4, pipeline determinism n in {2,3}).
// `corrupt_hook` lets tests inject a broken circuit for the negative path.
inline VerifyOutcome verify_all(
    const std::function<Circuit(int, const PermutationSpec&, Circuit)>& corrupt_hook = nullptr) {
    VerifyOutcome out;
    const double tol = 1e-9;

    for (int n = 1; n <= 4; ++n) {
        for (const auto& spec : all_specs(n)) {
            ++out.checks_run;
            Circuit circ = permutation_circuit(n, spec);
            if (corrupt_hook) circ = corrupt_hook(n, spec, std::move(circ));
            const DenseMatrix got = unitary_of(circ);
            const DenseMatrix want = permutation_matrix(spec);
            if (max_abs_diff(got, want) > tol) {
                std::ostringstream name;
                name << "permutation n=" << n << " P_" << spec.m << parity_char(spec.parity);
                out.failures.push_back(
                    {name.str(), detail::first_matrix_mismatch(got, want, tol)});
            }
        }
    }

    for (int n = 1; n <= 4; ++n) {
        ++out.checks_run;
        if (!equal_up_to_global_phase(unitary_of(qft_circuit(n)),
                                      dft_matrix(std::size_t{1} << n), tol))
            out.failures.push_back({"qft n=" + std::to_string(n), "differs from DFT matrix"});
        ++out.checks_run;
        if (!equal_up_to_global_phase(unitary_of(inverse_qft_circuit(n)),
                                      adjoint(dft_matrix(std::size_t{1} << n)), tol))
            out.failures.push_back(
                {"inverse qft n=" + std::to_string(n), "differs from DFT adjoint"});
    }

    for (int n : {2, 3}) {
        for (SchemeVariant v : {SchemeVariant::original, SchemeVariant::optimized}) {
            for (const auto& spec : all_specs(n)) {
                ++out.checks_run;
                const QpaScheme scheme(v, n);
                const StateVector state = run_circuit(build_pipeline(scheme, spec));
                double p;
                if (v == SchemeVariant::optimized) {
                    auto [p0, p1] = measure_qubit(state, 1);
                    p = spec.parity == Parity::positive ? p1 : p0;
                } else {
                    p = measure_all(state)
                            .probabilities[spec.parity == Parity::positive ? 1 : spec.d - 1];
                }
                if (std::abs(p - 1.0) > tol) {
                    std::ostringstream name;
                    name << scheme_name(v) << " pipeline n=" << n << " P_" << spec.m
                         << parity_char(spec.parity);
                    out.failures.push_back({name.str(),
                                            "success probability " + format_double(p)});
                }
            }
        }
    }
    return out;
}

}  // namespace qpa
