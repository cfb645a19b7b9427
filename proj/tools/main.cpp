// Copyright 2026 the bridgecons developers. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
//
// Command-line front end: run scenario files, validate them, and
// reproduce the bundled demos. Summary output is one key=value per
// line; exit codes are 0 (success), 1 (bad input or I/O), 2 (run did
// not converge).
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bridgecons/demos.hpp"
#include "bridgecons/format.hpp"
#include "bridgecons/sim.hpp"

namespace {

using namespace bridgecons;

std::string format_vector(const Eigen::VectorXd& v) {
    std::string out;
    for (Eigen::Index c = 0; c < v.size(); ++c) {
        if (c > 0) out += ',';
        out += format_real(v(c));
    }
    return out;
}

int execute(Scenario scenario, const std::optional<std::string>& trace_path,
            const std::optional<double>& tol_override,
            const std::optional<std::int64_t>& max_rounds_override) {
    if (tol_override) scenario.tol = *tol_override;
    if (max_rounds_override) scenario.max_rounds = *max_rounds_override;

    const ScenarioRun run = run_scenario(scenario);
    if (trace_path) {
        write_trace(run.trace, std::filesystem::path(*trace_path));
    }

    const RunResult& r = run.result;
    for (std::size_t i = 0; i < r.final_estimates.size(); ++i) {
        std::cout << "estimate_" << (i + 1) << '=';
        if (r.final_estimates[i]) {
            std::cout << format_vector(*r.final_estimates[i]);
        }
        std::cout << '\n';
    }
    std::cout << "target=" << format_vector(r.target) << '\n';
    std::cout << "max_error=" << format_real(r.max_error) << '\n';
    std::cout << "rounds=" << r.rounds << '\n';
    std::cout << "converged=" << (r.converged ? "true" : "false") << '\n';
    return r.converged ? 0 : 2;
}

int do_validate(const std::string& file) {
    std::ifstream in(file);
    if (!in) {
        throw IoFailure("cannot open " + file);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const Scenario scenario = parse_scenario(buffer.str());

    int errors = 0;
    int warnings = 0;
    for (const Finding& f : validate(scenario)) {
        if (f.severity == Severity::error) {
            ++errors;
            std::cout << "error=" << f.code << ": " << f.message << '\n';
        } else {
            ++warnings;
            std::cout << "warning=" << f.code << ": " << f.message << '\n';
        }
    }
    std::cout << "errors=" << errors << '\n';
    std::cout << "warnings=" << warnings << '\n';
    return errors == 0 ? 0 : 1;
}

int do_demo(const std::string& name, const std::optional<std::string>& trace_path) {
    if (name == "naive-baseline") {
        if (trace_path) {
            throw InvalidArgument("the naive-baseline demo runs no rounds, so it produces no trace");
        }
        const NaiveBaseline baseline = naive_baseline_demo();
        for (std::size_t i = 0; i < baseline.states.size(); ++i) {
            std::cout << "state_" << (i + 1) << '=' << format_real(baseline.states[i])
                      << '\n';
        }
        std::cout << "mean=" << format_real(baseline.mean) << '\n';
        return 0;
    }
    return execute(name == "fig1" ? fig1_scenario() : fig3_scenario(), trace_path,
                   std::nullopt, std::nullopt);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bridge consensus: averaging over participating nodes only"};
    app.require_subcommand(1);

    std::string scenario_file;
    std::string demo_name;
    std::optional<std::string> trace_path;
    std::optional<double> tol_override;
    std::optional<std::int64_t> max_rounds_override;

    CLI::App* run_cmd = app.add_subcommand("run", "run a scenario file");
    run_cmd->add_option("file", scenario_file, "scenario file (JSON)")->required();
    run_cmd->add_option("--trace", trace_path, "write the per-round trace CSV here");
    run_cmd->add_option("--tol", tol_override, "override the stop tolerance")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--max-rounds", max_rounds_override, "override the round limit")
        ->check(CLI::PositiveNumber);

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "check a scenario file without running it");
    validate_cmd->add_option("file", scenario_file, "scenario file (JSON)")->required();

    CLI::App* demo_cmd = app.add_subcommand("demo", "run a bundled demo");
    demo_cmd->add_option("name", demo_name, "one of fig1, fig3, naive-baseline")
        ->required()
        ->check(CLI::IsMember(bridgecons::demo_names()));
    demo_cmd->add_option("--trace", trace_path, "write the per-round trace CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) {
            return execute(bridgecons::load_scenario(scenario_file), trace_path,
                           tol_override, max_rounds_override);
        }
        if (validate_cmd->parsed()) {
            return do_validate(scenario_file);
        }
        if (demo_cmd->parsed()) {
            return do_demo(demo_name, trace_path);
        }
    } catch (const bridgecons::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
