// Noise model: analytic error estimates, Monte Carlo execution, success
// statistics and the ensemble average formula.

#include "qpa/noise.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qpa/builder.hpp"
#include "qpa/transpiler.hpp"
#include "success_fixtures.hpp"

using namespace qpa;

namespace {

CalibrationConfig uniform_calibration(int n, double e_g, double e_cx, double e_r) {
    CalibrationConfig cfg;
    for (int q = 0; q < n; ++q) cfg.qubits[q] = QubitCalibration{5.0, 50.0, 40.0, e_g, e_r, 0.0};
    for (int c = 0; c < n; ++c)
        for (int t = 0; t < n; ++t)
            if (c != t) cfg.cnot_errors[{c, t}] = e_cx;
    return cfg;
}

NoisySimConfig sim_config(const CalibrationConfig& cal, int n, std::uint64_t seed,
                          std::uint64_t shots = 8192, int samples = 5) {
    return NoisySimConfig{cal, QubitLabeling::identity(n), shots, samples, seed};
}

std::vector<int> all_measured(int n) {
    std::vector<int> m(n);
    for (int i = 0; i < n; ++i) m[i] = i;
    return m;
}

}  // namespace

TEST(ErrorEstimate, EmptyCircuitIsZero) {
    const NoisySimConfig cfg = sim_config(uniform_calibration(2, 0.01, 0.1, 0.05), 2, 1);
    EXPECT_DOUBLE_EQ(circuit_error_estimate(Circuit(2), cfg, {}), 0.0);
}

TEST(ErrorEstimate, SingleGateAndReadout) {
    const NoisySimConfig cfg = sim_config(uniform_calibration(2, 0.01, 0.1, 0.05), 2, 1);
    Circuit c(2);
    c.cnot(0, 1);
    EXPECT_NEAR(circuit_error_estimate(c, cfg, {}), 0.1, 1e-15);
    EXPECT_NEAR(circuit_error_estimate(c, cfg, {0, 1}), 1.0 - 0.9 * 0.95 * 0.95, 1e-15);
}

TEST(ErrorEstimate, ReorderInvariantAndMonotone) {
    const NoisySimConfig cfg = sim_config(uniform_calibration(3, 0.004, 0.03, 0.02), 3, 1);
    Circuit a(3);
    a.h(0).cnot(1, 2).x(2).u1(0.3, 1).cnot(0, 1);
    Circuit b(3);
    b.cnot(0, 1).u1(0.3, 1).x(2).cnot(1, 2).h(0);
    EXPECT_NEAR(circuit_error_estimate(a, cfg, {0}), circuit_error_estimate(b, cfg, {0}), 1e-12);
    double prev = circuit_error_estimate(Circuit(3), cfg, {0});
    Circuit grow(3);
    for (int i = 0; i < 12; ++i) {
        grow.h(i % 3);
        const double now = circuit_error_estimate(grow, cfg, {0});
        EXPECT_GE(now, prev);
        prev = now;
    }
}

TEST(ErrorEstimate, MissingCalibrationPaths) {
    CalibrationConfig cal = uniform_calibration(2, 0.001, 0.01, 0.02);
    cal.cnot_errors.erase({1, 0});
    const NoisySimConfig cfg = sim_config(cal, 2, 1);
    Circuit c(2);
    c.cnot(1, 0);
    EXPECT_THROW(circuit_error_estimate(c, cfg, {}), MissingCalibration);
    Circuit t(2);
    t.swap(0, 1);
    EXPECT_THROW(circuit_error_estimate(t, cfg, {}), MissingCalibration);
}

TEST(NoisyRun, ZeroNoiseMatchesIdealSamplingExactly) {
    const Circuit pipeline =
        build_pipeline({SchemeVariant::optimized, 2}, {4, 2, Parity::negative});
    const NoisySimConfig cfg = sim_config(CalibrationConfig::all_zero(2), 2, 0xFEED);
    const auto noisy = noisy_run(pipeline, cfg, all_measured(2));
    const Distribution ideal = measure_all(run_circuit(pipeline));
    ASSERT_EQ(noisy.size(), 5u);
    for (int s = 0; s < 5; ++s) {
        const ShotCounts want = sample(ideal, cfg.shots, derive_seed(cfg.seed, s));
        EXPECT_TRUE(noisy[s] == want) << "sample " << s;
    }
}

TEST(NoisyRun, ZeroNoiseSubsetMeasurementMatchesMarginal) {
    const Circuit pipeline =
        build_pipeline({SchemeVariant::optimized, 3}, {8, 2, Parity::positive});
    const NoisySimConfig cfg = sim_config(CalibrationConfig::all_zero(3), 3, 0xFACE);
    const auto noisy = noisy_run(pipeline, cfg, {1});
    const auto [p0, p1] = measure_qubit(run_circuit(pipeline), 1);
    const Distribution marginal{2, {p0, p1}};
    for (int s = 0; s < 5; ++s)
        EXPECT_TRUE(noisy[s] == sample(marginal, cfg.shots, derive_seed(cfg.seed, s)));
}

TEST(NoisyRun, SeededDeterminism) {
    const Circuit pipeline =
        build_pipeline({SchemeVariant::optimized, 2}, {4, 1, Parity::positive});
    const NoisySimConfig cfg =
        sim_config(uniform_calibration(2, 0.002, 0.02, 0.03), 2, 0xD00D, 2048, 3);
    const auto a = noisy_run(pipeline, cfg, {1});
    const auto b = noisy_run(pipeline, cfg, {1});
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(a[i] == b[i]);
}

TEST(NoisyRun, ReadoutAndRelaxKnobs) {
    Circuit flip(1);
    flip.x(0);
    // certain readout flip turns |1> into all-zero counts
    CalibrationConfig cal = CalibrationConfig::all_zero(1);
    cal.qubits[0].readout_error = 1.0;
    auto counts = noisy_run(flip, sim_config(cal, 1, 7, 512, 1), {0});
    EXPECT_EQ(counts[0].counts[0], 512u);
    // certain relaxation does the same before readout
    cal.qubits[0].readout_error = 0.0;
    cal.qubits[0].relax_prob = 1.0;
    counts = noisy_run(flip, sim_config(cal, 1, 7, 512, 1), {0});
    EXPECT_EQ(counts[0].counts[0], 512u);
    // relaxation never touches the ground state
    Circuit idle(1);
    counts = noisy_run(idle, sim_config(cal, 1, 7, 512, 1), {0});
    EXPECT_EQ(counts[0].counts[0], 512u);
}

TEST(NoisyRun, AppendingGatesLowersSuccess) {
    // paired Monte Carlo: extra noisy gates on the measured qubit must cost
    // success well beyond four binomial sigmas
    const QpaScheme scheme(SchemeVariant::optimized, 2);
    const PermutationSpec spec{4, 0, Parity::positive};
    Circuit base = build_pipeline(scheme, spec);
    Circuit longer = base;
    for (int i = 0; i < 10; ++i) longer.x(1).x(1);
    const CalibrationConfig cal = uniform_calibration(2, 0.01, 0.05, 0.0);
    const NoisySimConfig cfg = sim_config(cal, 2, 0xABBA);
    const auto short_counts = noisy_run(base, cfg, {1});
    const auto long_counts = noisy_run(longer, cfg, {1});
    double s_short = 0.0, s_long = 0.0;
    for (int s = 0; s < cfg.samples; ++s) {
        s_short += success_probability(short_counts[s], spec, scheme);
        s_long += success_probability(long_counts[s], spec, scheme);
    }
    s_short /= cfg.samples;
    s_long /= cfg.samples;
    const double sigma = std::sqrt(0.5 * 0.5 / (8192.0 * cfg.samples));
    EXPECT_GT(s_short - s_long, 4.0 * sigma);
}

TEST(NoisyRun, PerSampleSpreadWithinBinomialBound) {
    const QpaScheme scheme(SchemeVariant::optimized, 2);
    const PermutationSpec spec{4, 1, Parity::negative};
    const Circuit pipeline = build_pipeline(scheme, spec);
    const CalibrationConfig cal = uniform_calibration(2, 0.002, 0.02, 0.02);
    const NoisySimConfig cfg = sim_config(cal, 2, 0x1DEA, 8192, 20);
    const auto counts = noisy_run(pipeline, cfg, {1});
    std::vector<double> s;
    double mean = 0.0;
    for (const auto& c : counts) {
        s.push_back(success_probability(c, spec, scheme));
        mean += s.back();
    }
    mean /= static_cast<double>(s.size());
    double var = 0.0;
    for (double v : s) var += (v - mean) * (v - mean);
    const double sample_std = std::sqrt(var / static_cast<double>(s.size() - 1));
    const double bound = std::sqrt(mean * (1.0 - mean) / 8192.0);
    EXPECT_LE(sample_std, 3.0 * bound);
    // in the high-success regime the bound itself stays below 0.24%
    if (mean >= 0.95) {
        EXPECT_LE(bound, 0.0024);
    }
}

TEST(SuccessProbability, CountsToFractions) {
    const QpaScheme optimized(SchemeVariant::optimized, 2);
    const QpaScheme original(SchemeVariant::original, 2);
    const PermutationSpec plus{4, 2, Parity::positive};
    const PermutationSpec minus{4, 2, Parity::negative};
    EXPECT_DOUBLE_EQ(
        success_probability(ShotCounts{2, {0, 8192}, 8192}, plus, optimized), 1.0);
    EXPECT_DOUBLE_EQ(
        success_probability(ShotCounts{2, {4096, 4096}, 8192}, plus, optimized), 0.5);
    EXPECT_DOUBLE_EQ(
        success_probability(ShotCounts{2, {8000, 192}, 8192}, minus, optimized), 8000.0 / 8192.0);
    EXPECT_DOUBLE_EQ(
        success_probability(ShotCounts{4, {0, 8192, 0, 0}, 8192}, plus, original), 1.0);
    EXPECT_DOUBLE_EQ(
        success_probability(ShotCounts{4, {0, 0, 0, 8192}, 8192}, minus, original), 1.0);
    EXPECT_THROW(success_probability(ShotCounts{4, {0, 0, 0, 8192}, 8192}, plus, optimized),
                 DimensionMismatch);
}

TEST(SuccessProbability, StoredCountsFixtures) {
    // stored 8192-shot count fixtures reproducing the two reference individual
    // success probabilities S_0^+ = 0.963 and S_0^- = 0.986
    const QpaScheme optimized(SchemeVariant::optimized, 2);
    const ShotCounts positive{2, {303, 7889}, 8192};
    EXPECT_NEAR(success_probability(positive, {4, 0, Parity::positive}, optimized), 0.963, 5e-4);
    const ShotCounts negative{2, {8077, 115}, 8192};
    EXPECT_NEAR(success_probability(negative, {4, 0, Parity::negative}, optimized), 0.986, 5e-4);
}

TEST(AverageSuccess, AllOnesDegenerate) {
    const std::vector<double> values(8, 1.0);
    const std::vector<double> weights(8, 0.125);
    const auto out = average_success(values, weights, 1e5);
    EXPECT_DOUBLE_EQ(out.mean, 1.0);
    EXPECT_DOUBLE_EQ(out.margin, 0.0);
}

TEST(AverageSuccess, TwoQubitFixtures) {
    const std::vector<double> weights(8, 0.125);
    {
        // mean-exact value set: the average lands on 0.974
        const auto out = average_success(fixtures::two_qubit_mean_true, weights, 1e5);
        EXPECT_NEAR(out.mean, 0.974, 1e-12);
        EXPECT_NEAR(out.margin, 0.0019001, 2e-6);  // frozen from the formula
        EXPECT_TRUE(out.n_sufficient);
    }
    {
        // margin-exact value set: the ±0.130% ensemble margin
        const auto out = average_success(fixtures::two_qubit_margin_true, weights, 1e5);
        EXPECT_NEAR(out.margin, 0.00130, 2e-4);
        EXPECT_NEAR(out.margin, 0.0013145, 2e-6);  // frozen from the formula
        EXPECT_TRUE(out.n_sufficient);
    }
}

TEST(AverageSuccess, ThreeQubitFixture) {
    const std::vector<double> weights(16, 1.0 / 16.0);
    const auto out = average_success(fixtures::three_qubit_values, weights, 1e5);
    EXPECT_NEAR(out.mean, 0.868, 1e-3);
    EXPECT_NEAR(out.margin, 0.0056, 2e-4);
    EXPECT_NEAR(out.margin, 0.0055351, 2e-6);  // frozen from the formula
    EXPECT_TRUE(out.n_sufficient);
}

TEST(AverageSuccess, NormalityConditionFlagsSmallN) {
    const std::vector<double> weights(8, 0.125);
    // C = 0.997, d = 4: the threshold sits just below 12000
    EXPECT_FALSE(average_success(fixtures::two_qubit_margin_true, weights, 1000).n_sufficient);
    EXPECT_FALSE(average_success(fixtures::two_qubit_margin_true, weights, 11000).n_sufficient);
    EXPECT_TRUE(average_success(fixtures::two_qubit_margin_true, weights, 12500).n_sufficient);
}

TEST(AverageSuccess, WeightValidation) {
    const std::vector<double> values(8, 0.9);
    EXPECT_THROW(average_success(values, std::vector<double>(7, 1.0 / 7), 1e5), WeightMismatch);
    EXPECT_THROW(average_success(values, std::vector<double>(8, 0.2), 1e5), WeightMismatch);
    EXPECT_THROW(average_success({0.9, 0.8, 0.7}, {0.3, 0.3, 0.4}, 1e5), WeightMismatch);
    std::vector<double> negative(8, 0.25);
    negative[0] = -0.75;
    EXPECT_THROW(average_success(values, negative, 1e5), WeightMismatch);
}

TEST(Calibration, JsonRoundTripAndValidation) {
    CalibrationConfig cal = uniform_calibration(3, 0.0017, 0.017, 0.03);
    cal.note = "test calibration";
    cal.qubits[2].relax_prob = 0.02;
    const CalibrationConfig back = CalibrationConfig::from_json(
        nlohmann::json::parse(cal.to_json().dump()));
    EXPECT_EQ(back.note, cal.note);
    EXPECT_EQ(back.qubits.size(), cal.qubits.size());
    EXPECT_DOUBLE_EQ(back.qubit(2).relax_prob, 0.02);
    EXPECT_DOUBLE_EQ(back.cnot_error(0, 1), 0.017);
    // invalid probabilities rejected
    nlohmann::json bad = nlohmann::json::parse(cal.to_json().dump());
    bad["qubits"][0]["e_g"] = 1.5;
    EXPECT_THROW(CalibrationConfig::from_json(bad), MissingCalibration);
}

TEST(ShotCountsJson, StableFieldOrder) {
    const ShotCounts counts{2, {10, 22}, 32};
    EXPECT_EQ(to_json(counts).dump(), R"({"dim":2,"values":[10,22],"shots":32})");
    const Distribution dist{2, {0.25, 0.75}};
    EXPECT_EQ(to_json(dist).dump(), R"({"dim":2,"values":[0.25,0.75]})");
}
