// Command-line front end: scenario evaluation (closed-form and/or Monte
// Carlo), parameter sweeps, canned figure bundles, and CSV comparison.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "irshcn/config_io.hpp"
#include "irshcn/errors.hpp"
#include "irshcn/sweep.hpp"

int main(int argc, char** argv) {
    CLI::App app{"IRS-assisted heterogeneous network coverage/throughput evaluator"};
    app.require_subcommand(1);

    irshcn::RunOptions run;
    std::string engine = "both";
    std::string sweep_arg, figure_arg;
    auto* cmd_run = app.add_subcommand("run", "evaluate a scenario, sweep, or figure bundle");
    cmd_run->add_option("--config", run.config_path, "scenario JSON file")->required();
    cmd_run->add_option("--engine", engine, "analytical | sim | both")
        ->check(CLI::IsMember({"analytical", "sim", "both"}));
    cmd_run->add_option("--trials", run.trials, "Monte Carlo drops per point");
    cmd_run->add_option("--seed", run.seed, "master RNG seed");
    cmd_run->add_option("--sweep", sweep_arg, "KEY=v1,v2,... (dotted parameter path)");
    cmd_run->add_option("--figure", figure_arg, "fig2 | fig3 | fig4")
        ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
    cmd_run->add_option("--out", run.out_dir, "output directory for CSV files");
    cmd_run->add_option("--window", run.window_m, "simulation window edge length [m]");
    cmd_run->add_option("--threads", run.threads,
                        "worker threads (0: IRSHCN_THREADS env or hardware)");

    irshcn::CompareOptions cmp;
    auto* cmd_cmp = app.add_subcommand("compare", "compare two result CSVs on a shared grid");
    cmd_cmp->add_option("file_a", cmp.file_a, "first CSV")->required();
    cmd_cmp->add_option("file_b", cmp.file_b, "second CSV")->required();
    cmd_cmp->add_option("--tolerance", cmp.tolerance, "max allowed deviation per metric");

    std::string validate_path;
    auto* cmd_val = app.add_subcommand("validate", "check a scenario config");
    cmd_val->add_option("--config", validate_path, "scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // bad flags are config errors
    }

    if (cmd_run->parsed()) {
        if (!sweep_arg.empty()) run.sweep = sweep_arg;
        if (!figure_arg.empty()) run.figure = figure_arg;
        if (run.sweep && run.figure) {
            std::cerr << "--sweep and --figure are mutually exclusive\n";
            return 2;
        }
        run.engine = engine == "analytical" ? irshcn::Engine::analytical
                     : engine == "sim"      ? irshcn::Engine::simulation
                                            : irshcn::Engine::both;
        return irshcn::cli_run(run, std::cout);
    }
    if (cmd_cmp->parsed()) return irshcn::cli_compare(cmp, std::cout);
    if (cmd_val->parsed()) {
        try {
            const auto scenario = irshcn::load_scenario(validate_path);
            if (const auto rep = irshcn::validate(scenario); !rep.ok()) {
                std::cout << rep.to_string();
                return 2;
            }
            std::cout << "ok\n";
            return 0;
        } catch (const irshcn::ConfigError& e) {
            std::cout << "config error: " << e.what() << "\n";
            return 2;
        }
    }
    return 2;
}
