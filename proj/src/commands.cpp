#include "satq/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>

#include "satq/errors.hpp"
#include "satq/passsim.hpp"
#include "satq/report.hpp"
#include "satq/rng.hpp"
#include "satq/validate.hpp"

namespace satq::cli {

namespace {
namespace fs = std::filesystem;

int guard(const scenario::ScenarioConfig& config, const std::function<void()>& body) {
    try {
        scenario::validate_config(config);
        fs::create_directories(config.out_dir);
        body();
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumericalFailure;
    }
}
}  // namespace

int cmd_simulate_pass(const scenario::ScenarioConfig& config) {
    return guard(config, [&] {
        const auto report = sim::simulate_pass(config);
        report::write_qkd_csv(report, config.out_dir + "/qkd_pass.csv");
        report::write_qkpc_csv(report, config.out_dir + "/qkpc_pass.csv");
        report::write_summary_json(report, config.out_dir + "/summary.json");
        if (config.plots) report::write_pass_plots(report, config.out_dir);
    });
}

int cmd_aperture_sweep(const scenario::ScenarioConfig& config,
                       const std::vector<double>& apertures_m) {
    return guard(config, [&] {
        if (apertures_m.empty()) throw ConfigError("aperture sweep needs at least one d_t_m");
        for (double d : apertures_m)
            if (!(d > 0.0)) throw ConfigError("aperture sweep requires every d_t_m > 0");
        const auto rows = sim::aperture_sweep(config, apertures_m);
        report::write_aperture_csv(rows, config.out_dir + "/aperture_sweep.csv");
    });
}

int cmd_qkpc_profile(const scenario::ScenarioConfig& config) {
    return guard(config, [&] {
        const auto profile = sim::scenario_loss_profile(config);
        sim::PassReport report;
        report.qkpc.reserve(profile.samples.size());
        for (std::size_t i = 0; i < profile.samples.size(); ++i) {
            const auto& s = profile.samples[i];
            sim::QkpcWindow w;
            w.t_s = s.t_s;
            w.loss_db = s.loss_total_db;
            w.duration_s = config.window_s;
            w.result = qkpc::optimize_point(s.eta_total, config.qkpc, config.source_rate_hz,
                                            derive_stream(config.seed, "qkpc-window", i));
            report.qkpc.push_back(w);
        }
        report::write_qkpc_csv(report, config.out_dir + "/qkpc_pass.csv");
    });
}

int cmd_validate(const scenario::ScenarioConfig& config, int trials) {
    if (trials < 10) {
        std::cerr << "config error: validate requires trials >= 10\n";
        return kExitConfigError;
    }
    try {
        scenario::validate_config(config);
        const auto results = validate::run_validation(config, trials);
        bool all_ok = true;
        for (const auto& r : results) {
            std::printf("[%s] %-28s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                        r.detail.c_str());
            all_ok = all_ok && r.passed;
        }
        if (!all_ok) {
            std::printf("\nfailed checks:\n");
            for (const auto& r : results)
                if (!r.passed) std::printf("  %-28s %s\n", r.name.c_str(), r.detail.c_str());
            return kExitValidationFailure;
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumericalFailure;
    }
}

}  // namespace satq::cli
