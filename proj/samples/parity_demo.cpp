// Minimal library walkthrough: build both pipelines for one permutation
// operator, check the ideal outcome, then run a short noisy experiment.

#include <cstdio>

#include "qpa/experiment.hpp"

using namespace qpa;

int main() {
    const PermutationSpec spec{8, 5, Parity::negative};

    // optimized scheme: 2n prep gates + the operator + a 2-gate decode,
    // parity read from qubit 1 alone
    const Circuit pipeline = build_pipeline({SchemeVariant::optimized, 3}, spec);
    const StateVector final_state = run_circuit(pipeline);
    const auto [p0, p1] = measure_qubit(final_state, 1);
    std::printf("P_%zu^%c over d=%zu: %zu gates, qubit-1 reads p0=%.3f p1=%.3f\n", spec.m,
                parity_char(spec.parity), spec.d, pipeline.size(), p0, p1);

    // the dense reference model agrees on the parity
    const ReferenceOutcome ref = reference_qpa(spec);
    std::printf("reference pipeline outcome index: %zu (d-1 means negative)\n", ref.outcome);

    // and the classical baseline needs two queries instead of one
    const ClassicalResult classical = classical_parity(make_oracle(spec), spec.d);
    std::printf("classical baseline: parity %c after %d queries\n",
                parity_char(classical.parity), classical.queries_used);

    // a short noisy run with uniform toy calibration
    CalibrationConfig cal = CalibrationConfig::all_zero(3);
    for (auto& [id, q] : cal.qubits) {
        q.gate_error = 0.002;
        q.readout_error = 0.03;
    }
    for (auto& [edge, e] : cal.cnot_errors) e = 0.02;
    ExperimentOptions opt;
    opt.scheme = SchemeVariant::optimized;
    opt.n = 3;
    opt.calibration = cal;
    opt.map = CouplingMap(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0}});
    opt.placement = QubitLabeling::identity(3);
    opt.shots = 1024;
    opt.samples = 3;
    opt.seed = 11;
    const ExperimentReport report = run_experiment(opt);
    std::printf("noisy 3-qubit suite: average success %.3f +- %.4f over %zu operators\n",
                report.average, report.margin, report.specs.size());
    return 0;
}
