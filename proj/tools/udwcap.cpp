// udwcap: sweeps, single-point queries and the self-test for the detector channel.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "udw/sweep.hpp"

namespace {

using namespace udw;

struct SweepArgs {
    std::string config;
    std::string output;
    std::string format;
    bool oracle{false};
    bool optimize{false};
    unsigned threads{0};
};

struct PointArgs {
    PointSpec spec;
    std::vector<double> bob;
    std::vector<double> alice;
    double beta{0.0};
    bool oracle{false};
    bool optimize{false};
    unsigned threads{1};
    std::string output;
};

struct SelftestArgs {
    std::string output;
    std::string mutate;
    unsigned threads{1};
};

std::filesystem::path checked_output(const std::string& path) {
    const std::filesystem::path p(path);
    const auto parent = p.parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent))
        throw ConfigError(0, "output", "output directory '" + parent.string() + "' does not exist");
    return p;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

int run_sweep_command(const SweepArgs& args) {
    SweepConfig cfg = load_sweep_config(args.config);
    if (!args.output.empty()) cfg.output = args.output;
    if (args.format == "csv") cfg.format = OutputFormat::Csv;
    if (args.format == "json") cfg.format = OutputFormat::Json;
    if (args.oracle) cfg.oracle = true;
    if (args.optimize) cfg.optimizer = true;
    if (args.threads > 0) cfg.threads = args.threads;
    const auto rows = run_sweep(cfg);
    std::size_t failures = 0;
    for (const auto& r : rows) failures += r.ok() ? 0 : 1;
    std::cerr << "wrote " << rows.size() << " rows to " << cfg.output.string();
    if (failures) std::cerr << " (" << failures << " with non-ok status)";
    std::cerr << '\n';
    return kExitOk;
}

int run_point_command(PointArgs args) {
    if (!args.bob.empty()) args.spec.bob_bloch = {args.bob[0], args.bob[1], args.bob[2]};
    if (!args.alice.empty()) args.spec.alice_bloch = Vector3d{args.alice[0], args.alice[1], args.alice[2]};
    if (args.beta > 0.0) args.spec.beta = args.beta;
    EvaluateOptions opts;
    opts.oracle = args.oracle;
    opts.optimize = args.optimize;
    opts.optimizer.threads = args.threads;
    const auto text = point_to_json(evaluate_point(args.spec, opts)).dump(2) + "\n";
    if (args.output.empty())
        std::cout << text;
    else
        write_text(checked_output(args.output), text);
    return kExitOk;
}

int run_selftest_command(const SelftestArgs& args) {
    std::filesystem::path out;
    if (!args.output.empty()) out = checked_output(args.output);
    SelftestOptions opts;
    opts.threads = args.threads;
    if (args.mutate == "gamma") opts.gamma_formula = corrupted_gammas;
    const SelftestReport report = selftest(opts);
    const auto text = report.to_json().dump(2) + "\n";
    std::cout << text;
    if (!out.empty()) write_text(out, text);
    return report.passed() ? kExitOk : kExitSelftestFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classical capacity of the delta-coupled two-detector channel"};
    app.require_subcommand(1);

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Evaluate a parameter grid from a config file");
    sweep->add_option("--config", sweep_args.config, "Config file")->required();
    sweep->add_option("--output", sweep_args.output, "Override the output path");
    sweep->add_option("--format", sweep_args.format, "Override the output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_flag("--oracle", sweep_args.oracle, "Add the quadrature cross-check column");
    sweep->add_flag("--optimize", sweep_args.optimize, "Run the brute-force optimizer per point");
    sweep->add_option("--threads", sweep_args.threads, "Worker threads")->check(CLI::PositiveNumber);

    PointArgs point_args;
    auto* point = app.add_subcommand("point", "Evaluate one configuration and print JSON");
    auto& spec = point_args.spec;
    point->add_option("--lambda-a", spec.lambda_a, "Alice's coupling lambda_A / sigma")->capture_default_str();
    point->add_option("--lambda-b", spec.lambda_b, "Bob's coupling lambda_B / sigma")->capture_default_str();
    point->add_option("--L", spec.separation, "Separation L / sigma")->capture_default_str();
    point->add_option("--dtau", spec.delay, "Delay dtau_AB / sigma")->capture_default_str();
    point->add_option("--eta", spec.eta_over_sigma, "eta / sigma")->capture_default_str();
    point->add_option("--beta", point_args.beta, "Thermal state with inverse temperature beta / sigma");
    point->add_option("--bob", point_args.bob, "Bob's initial Bloch vector x y z")->expected(3);
    point->add_option("--alice", point_args.alice, "Alice's input Bloch vector x y z")->expected(3);
    point->add_option("--phase-a", spec.phase_a, "Omega_A tau_A0")->capture_default_str();
    point->add_option("--phase-b", spec.phase_b, "Omega_B tau_B0")->capture_default_str();
    point->add_flag("--tune-phase", spec.tune_bob_phase, "Choose phase_b so that Bob's projection vanishes");
    point->add_flag("--oracle", point_args.oracle, "Report the quadrature residual");
    point->add_flag("--optimize", point_args.optimize, "Run the brute-force optimizer");
    point->add_option("--threads", point_args.threads, "Optimizer threads")->check(CLI::PositiveNumber);
    point->add_option("--output", point_args.output, "Write the JSON here instead of stdout");

    SelftestArgs selftest_args;
    auto* test = app.add_subcommand("selftest", "Run the invariant suite");
    test->add_option("--output", selftest_args.output, "Also write the JSON report here");
    test->add_option("--threads", selftest_args.threads, "Optimizer threads")->check(CLI::PositiveNumber);
    test->add_option("--mutate", selftest_args.mutate, "Negative control")
        ->check(CLI::IsMember({"gamma"}))
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*sweep) return run_sweep_command(sweep_args);
        if (*point) return run_point_command(point_args);
        return run_selftest_command(selftest_args);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
