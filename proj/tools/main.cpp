#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "roucir/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"rou-cir-lab: square-root CIR / reflected OU simulation laboratory"};
    app.require_subcommand(1);

    roucir::cli::CommonOptions options;
    std::string config_path;
    std::uint64_t seed = 0;
    double dt = 0.0, horizon = 0.0;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key = value configuration file")
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", options.out_dir, "output directory (default .)");
        cmd->add_option("--seed", seed, "master RNG seed");
        cmd->add_option("--dt", dt, "time step (overrides n_steps)");
        cmd->add_option("--horizon", horizon, "horizon T");
    };

    auto* simulate = app.add_subcommand("simulate", "run one scheme and write path CSVs");
    std::string scheme;
    simulate->add_option("scheme", scheme,
                         "cir-euler | sqrt-implicit | rou-projected | ou | ou-squared-sum")
        ->required();
    add_common(simulate);

    auto* figure1 = app.add_subcommand(
        "figure1", "sqrt FCIR path with its epsilon-integral, one panel per Hurst index");
    std::vector<double> hurst_list;
    double fig1_eps = 1e-4;
    figure1->add_option("--hurst", hurst_list, "Hurst indices (default 0.6 0.7 0.8 0.9)")
        ->delimiter(',');
    figure1->add_option("--eps", fig1_eps, "perturbation epsilon (default 1e-4)");
    add_common(figure1);

    auto* figure2 =
        app.add_subcommand("figure2", "epsilon ladder against the projected RFOU reference");
    std::vector<double> eps_ladder;
    figure2->add_option("--eps", eps_ladder, "decreasing epsilon ladder (default 1 0.5 0.25 0.1 1e-4)")
        ->delimiter(',');
    add_common(figure2);

    auto* verify = app.add_subcommand("verify", "run acceptance checks");
    std::string suite = "all";
    bool verbose = false;
    verify->add_option("suite", suite, "noise | schemes | reflection | convergence | all");
    verify->add_flag("--verbose", verbose, "print per-case details");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return roucir::cli::kExitUsage;
    }

    for (auto* cmd : {simulate, figure1, figure2}) {
        if (!cmd->parsed()) continue;
        if (cmd->count("--config") > 0) options.config = config_path;
        if (cmd->count("--seed") > 0) options.seed = seed;
        if (cmd->count("--dt") > 0) options.dt = dt;
        if (cmd->count("--horizon") > 0) options.horizon = horizon;
    }

    if (simulate->parsed()) return roucir::cli::run_simulate(scheme, options, std::cerr);
    if (figure1->parsed()) {
        std::optional<double> eps;
        if (figure1->count("--eps") > 0) eps = fig1_eps;
        return roucir::cli::run_figure1(hurst_list, eps, options, std::cerr);
    }
    if (figure2->parsed()) return roucir::cli::run_figure2(eps_ladder, options, std::cerr);
    if (verify->parsed())
        return roucir::cli::run_verify(suite, std::cout, std::cerr, verbose);
    return roucir::cli::kExitUsage;
}
