#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "satq/commands.hpp"
#include "satq/errors.hpp"
#include "satq/scenario.hpp"

namespace {
struct CommonArgs {
    std::string config_path;
    std::string loss_csv;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool have_seed = false;
    bool plots = false;
    int workers = 0;
};

void add_common(CLI::App* app, CommonArgs& args) {
    app->add_option("--config", args.config_path, "scenario config file (key = value)");
    app->add_option("--loss-csv", args.loss_csv, "externally supplied loss profile CSV");
    app->add_option("--out", args.out_dir, "output directory");
    app->add_option("--seed", args.seed, "root seed for all random sub-streams")
        ->each([&](const std::string&) { args.have_seed = true; });
    app->add_flag("--plots", args.plots, "write SVG charts next to the CSV outputs");
    app->add_option("--workers", args.workers, "worker threads for per-window optimization");
}

// Returns the merged scenario, or exits with a config error.
satq::scenario::ScenarioConfig build_config(const CommonArgs& args) {
    satq::scenario::ScenarioConfig cfg;
    if (!args.config_path.empty()) cfg = satq::scenario::load_config(args.config_path);
    if (!args.loss_csv.empty()) cfg.loss_csv = args.loss_csv;
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    if (args.have_seed) cfg.seed = args.seed;
    if (args.plots) cfg.plots = true;
    if (args.workers > 0) cfg.workers = args.workers;
    return cfg;
}
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"satellite quantum downlink simulator (one-decoy BB84 + OOK private link)"};
    app.require_subcommand(1);

    CommonArgs sim_args, sweep_args, qkpc_args, validate_args;
    std::vector<double> apertures = {0.02, 0.04, 0.06, 0.08, 0.10, 0.12};
    int trials = 100;

    auto* sim = app.add_subcommand("simulate-pass", "simulate a full pass (QKD + QKPC)");
    add_common(sim, sim_args);

    auto* sweep = app.add_subcommand("aperture-sweep", "optimized zenith SKR per Tx aperture");
    add_common(sweep, sweep_args);
    sweep->add_option("--apertures", apertures, "transmitter aperture diameters, m")
        ->delimiter(',');

    auto* qkpc = app.add_subcommand("qkpc-profile", "optimized private rates over the pass");
    add_common(qkpc, qkpc_args);

    auto* validate = app.add_subcommand("validate", "statistical validation suite");
    add_common(validate, validate_args);
    validate->add_option("--trials", trials, "repetitions of each statistical experiment");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : satq::cli::kExitConfigError;
    }

    try {
        if (sim->parsed()) return satq::cli::cmd_simulate_pass(build_config(sim_args));
        if (sweep->parsed()) return satq::cli::cmd_aperture_sweep(build_config(sweep_args), apertures);
        if (qkpc->parsed()) return satq::cli::cmd_qkpc_profile(build_config(qkpc_args));
        if (validate->parsed()) return satq::cli::cmd_validate(build_config(validate_args), trials);
    } catch (const satq::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return satq::cli::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return satq::cli::kExitNumericalFailure;
    }
    return satq::cli::kExitConfigError;
}
