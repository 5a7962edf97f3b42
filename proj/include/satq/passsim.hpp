#pragma once

#include <optional>
#include <vector>

#include "satq/scenario.hpp"

namespace satq::sim {

struct QkdWindow {
    double t_s = 0;
    double elevation_rad = 0;  // NaN for ingested profiles
    double loss_db = 0;
    double duration_s = 1;
    finitekey::KeyAnalysis analysis;
    detstat::ProtocolParams params;
    bool plateau = false;  // optimizer saw a flat (all-zero) objective
};

struct QkpcWindow {
    double t_s = 0;
    double loss_db = 0;
    double duration_s = 1;
    qkpc::QkpcResult result;
};

struct PassSummary {
    double total_skl_bits = 0;
    double qkd_window_s = 0;
    double peak_skr_hz = 0;
    double min_qber_z = 0.5;
    double qkd_cutoff_loss_db = 0;
    double total_private_bits = 0;
    double qkpc_rate_plateau_bps = 0;
    double pass_duration_s = 0;
};

struct PassReport {
    std::vector<QkdWindow> qkd;
    std::vector<QkpcWindow> qkpc;
    PassSummary summary;
};

// Loss profile for the configured scenario: ingested when run.loss_csv is
// set, otherwise computed from the orbit and channel models.
channel::LossProfile scenario_loss_profile(const scenario::ScenarioConfig& config);

// Optimizes the secret key length over (mu1, mu2, p_mu1, p_za) at one
// channel efficiency. Deterministic for a fixed seed.
QkdWindow optimize_qkd_window(const scenario::ScenarioConfig& config, double eta,
                              std::uint64_t seed,
                              const std::optional<std::vector<double>>& warm_start = std::nullopt);

// Full pass: per-window optimized QKD plus per-sample optimized QKPC.
// Windows are dispatched to `config.workers` threads; output is identical
// for any worker count. A sequential warm-start refinement pass smooths the
// parameter trends unless disabled.
PassReport simulate_pass(const scenario::ScenarioConfig& config);

// Zenith secret key rate for a transmitter aperture sweep entry.
struct ApertureSweepRow {
    double d_t_m = 0;
    double zenith_loss_db = 0;
    double skr_hz = 0;
};
std::vector<ApertureSweepRow> aperture_sweep(const scenario::ScenarioConfig& config,
                                             const std::vector<double>& apertures_m);

}  // namespace satq::sim
