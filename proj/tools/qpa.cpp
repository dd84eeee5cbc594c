// qpa — build, transpile, simulate and benchmark quantum-permutation-parity
// circuits from the command line.
//
// Subcommands: build, transpile, experiment, scaling, verify.
// Exit codes: 0 success, 2 flag error, 3 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qpa/experiment.hpp"

namespace {

using namespace qpa;

std::string data_root() {
    if (const char* env = std::getenv("QPA_DATA_DIR")) return env;
#ifdef QPA_SOURCE_DIR
    return std::string(QPA_SOURCE_DIR) + "/data";
#else
    return "data";
#endif
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("QPA_SEED")) return std::stoull(env);
    return flag_seed;
}

CouplingMap load_map(const std::string& name) {
    if (name == "ibmqx2" || name == "ibmqx4") return coupling_preset(name);
    std::ifstream in(name);
    if (!in) {
        const std::string preset = data_root() + "/coupling/" + name + ".json";
        in.open(preset);
        if (!in) throw ParseError("cannot open coupling map `" + name + "`");
    }
    nlohmann::json j;
    in >> j;
    return CouplingMap::from_json(j);
}

CalibrationConfig load_calibration(const std::string& name, std::string& id_out) {
    std::ifstream in(name);
    if (!in) {
        const std::string preset = data_root() + "/calibration/" + name + ".json";
        in.open(preset);
        if (!in) throw ParseError("cannot open calibration `" + name + "`");
    }
    nlohmann::json j;
    in >> j;
    id_out = name;
    return CalibrationConfig::from_json(j);
}

// `q0=3,q1=2` or bare `3,2`, logical order
QubitLabeling parse_placement(const std::string& text) {
    std::vector<int> mapping;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        const auto eq = tok.find('=');
        std::string value = tok;
        if (eq != std::string::npos) {
            const std::string key = tok.substr(0, eq);
            if (key.size() < 2 || key[0] != 'q' ||
                std::stoul(key.substr(1)) != mapping.size())
                throw ParseError("placement keys must be q0,q1,... in order: " + text);
            value = tok.substr(eq + 1);
        }
        mapping.push_back(std::stoi(value));
    }
    if (mapping.empty()) throw ParseError("empty placement");
    return QubitLabeling(std::move(mapping));
}

Circuit read_circuit(const std::string& path) {
    if (path == "-") return circuit_from_text(std::cin);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open circuit file `" + path + "`");
    return circuit_from_text(in);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write `" + path + "`");
    out << content;
}

void emit(const std::optional<std::string>& path, const std::string& content) {
    if (path)
        write_file(*path, content);
    else
        std::cout << content;
}

int cmd_build(const std::string& scheme, int n, std::size_t m, const std::string& parity,
              const std::string& stage, const std::optional<std::string>& out) {
    const SchemeVariant variant = scheme_from_name(scheme);
    const PermutationSpec spec(std::size_t{1} << n, m, parity_from_char(parity.at(0)));
    Circuit c(n);
    if (stage == "pipeline")
        c = build_pipeline({variant, n}, spec);
    else if (stage == "prep")
        c = optimized_prep_circuit(n);
    else if (stage == "perm")
        c = permutation_circuit(n, spec);
    else if (stage == "decode")
        c = optimized_decode_circuit(n);
    else if (stage == "qft")
        c = qft_circuit(n);
    else if (stage == "iqft")
        c = inverse_qft_circuit(n);
    else
        throw ParseError("unknown stage: " + stage);
    emit(out, to_text(c));
    return 0;
}

int cmd_transpile(const std::string& map_name, const std::string& place,
                  const std::string& input, const std::optional<std::string>& out,
                  const std::optional<std::string>& report_path) {
    const Circuit c = read_circuit(input);
    const CouplingMap map = load_map(map_name);
    const QubitLabeling placement =
        place.empty() ? QubitLabeling::identity(c.num_qubits) : parse_placement(place);
    const auto [lowered, report] = transpile(c, map, placement);
    emit(out, to_text(lowered));
    if (report_path)
        write_file(*report_path, report.to_json().dump(2) + "\n");
    else
        std::cerr << report.to_json().dump(2) << "\n";
    return 0;
}

int cmd_experiment(const std::string& scheme, int n, const std::string& map_name,
                   const std::string& place, const std::string& calib, bool ideal,
                   std::uint64_t shots, int samples, std::uint64_t seed,
                   const std::string& out_prefix) {
    ExperimentOptions opt;
    opt.scheme = scheme_from_name(scheme);
    opt.n = n;
    opt.ideal = ideal;
    opt.shots = shots;
    opt.samples = samples;
    opt.seed = effective_seed(seed);
    if (!map_name.empty()) {
        opt.map = load_map(map_name);
        opt.map_name = map_name;
    }
    if (!place.empty()) opt.placement = parse_placement(place);
    if (!ideal && !calib.empty()) {
        std::string id;
        opt.calibration = load_calibration(calib, id);
        opt.calibration_id = id;
    }
    const ExperimentReport report = run_experiment(opt);
    const std::string prefix =
        out_prefix.empty() ? "experiment_" + scheme + "_n" + std::to_string(n) : out_prefix;
    write_file(prefix + ".json", to_json(report).dump(2) + "\n");
    write_file(prefix + ".csv", to_csv(report));
    std::cout << "average success " << format_double(report.average) << " +- "
              << format_double(report.margin) << " over " << report.specs.size()
              << " operators (" << prefix << ".json, " << prefix << ".csv)\n";
    if (!report.n_sufficient)
        std::cerr << "note: ensemble size fails the N > 9dC/(1-C) normality condition\n";
    return 0;
}

int cmd_scaling(int max_n, const std::optional<std::string>& out) {
    emit(out, scaling_csv(max_n));
    return 0;
}

int cmd_verify() {
    const VerifyOutcome outcome = verify_all();
    for (const auto& f : outcome.failures)
        std::cout << "FAIL " << f.check << ": " << f.detail << "\n";
    std::cout << (outcome.ok() ? "verify: all " : "verify: FAILED ") << outcome.checks_run
              << " checks" << (outcome.ok() ? " passed" : "") << "\n";
    return outcome.ok() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum permutation algorithm toolkit"};
    app.require_subcommand(1);

    std::string scheme = "optimized", parity = "+", stage = "pipeline";
    std::string map_name, place, calib, input = "-", out_prefix;
    std::optional<std::string> out_file, report_file;
    int n = 2, samples = 5, max_n = 10;
    std::size_t m = 0;
    std::uint64_t shots = 8192, seed = 20171005;
    bool ideal = false;

    auto* build = app.add_subcommand("build", "emit a circuit in the text format");
    build->add_option("--scheme", scheme, "original or optimized");
    build->add_option("--n", n, "register width")->required();
    build->add_option("--m", m, "permutation shift");
    build->add_option("--parity", parity, "+ or -");
    build->add_option("--stage", stage, "pipeline|prep|perm|decode|qft|iqft");
    build->add_option("-o,--out", out_file, "output file (default stdout)");

    auto* transpile_cmd = app.add_subcommand("transpile", "lower a circuit onto a coupling map");
    transpile_cmd->add_option("--map", map_name, "preset name or JSON file")->required();
    transpile_cmd->add_option("--place", place, "placement, e.g. q0=3,q1=2");
    transpile_cmd->add_option("circuit", input, "circuit file (- for stdin)");
    transpile_cmd->add_option("-o,--out", out_file, "lowered circuit file (default stdout)");
    transpile_cmd->add_option("--report", report_file, "transpile report JSON file");

    auto* experiment = app.add_subcommand("experiment", "run the full 2d-operator suite");
    experiment->add_option("--scheme", scheme, "original or optimized")->required();
    experiment->add_option("--n", n, "register width (2 or 3)")->required();
    experiment->add_option("--map", map_name, "coupling map preset or file");
    experiment->add_option("--place", place, "placement override");
    experiment->add_option("--calib", calib, "calibration JSON (file or preset name)");
    experiment->add_flag("--ideal", ideal, "skip transpilation and noise");
    experiment->add_option("--shots", shots, "shots per sample");
    experiment->add_option("--samples", samples, "samples per operator");
    experiment->add_option("--seed", seed, "base seed (QPA_SEED overrides)");
    experiment->add_option("--out", out_prefix, "output prefix for .json/.csv");

    auto* scaling = app.add_subcommand("scaling", "gate-count scaling table");
    scaling->add_option("--max-n", max_n, "largest register width (<= 12)");
    scaling->add_option("-o,--out", out_file, "output file (default stdout)");

    app.add_subcommand("verify", "dense equivalence and determinism checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the error message
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("build"))
            return cmd_build(scheme, n, m, parity, stage, out_file);
        if (app.got_subcommand("transpile"))
            return cmd_transpile(map_name, place, input, out_file, report_file);
        if (app.got_subcommand("experiment"))
            return cmd_experiment(scheme, n, map_name, place, calib, ideal, shots, samples, seed,
                                  out_prefix);
        if (app.got_subcommand("scaling")) return cmd_scaling(max_n, out_file);
        if (app.got_subcommand("verify")) return cmd_verify();
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
