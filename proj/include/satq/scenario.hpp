#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "satq/channel.hpp"
#include "satq/detstat.hpp"
#include "satq/finitekey.hpp"
#include "satq/optimize.hpp"
#include "satq/orbit.hpp"
#include "satq/qkpc.hpp"

namespace satq::scenario {

// Whole-run configuration. Defaults reproduce the reference downlink:
// 500 km zenith pass, 4 cm / 70 cm apertures at 1550 nm, 15 dB intrinsic
// loss, 1 GHz source, one-decoy three-state BB84 plus OOK private link.
struct ScenarioConfig {
    orbit::OrbitConfig orbit;
    channel::ChannelConfig channel;
    detstat::DetectorModel detector;
    finitekey::SecurityParams security;
    qkpc::QkpcParams qkpc;

    double source_rate_hz = 1e9;
    double window_s = 1.0;
    double p_zb = 0.9;

    // When set, windows run at these fixed protocol parameters instead of
    // per-window optimization.
    std::optional<detstat::ProtocolParams> fixed_params;

    std::string loss_csv;   // optional externally supplied loss profile
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    int workers = 1;
    bool warm_start = true;
    bool plots = false;

    int optimizer_restarts = 8;
    int optimizer_max_evals = 2000;
};

// Parses the flat `key = value` format ('#' starts a comment). Unknown or
// malformed keys raise ConfigError naming the offending key.
ScenarioConfig load_config(const std::string& path);

// Applies invariant checks; raises ConfigError naming the violated key.
void validate_config(const ScenarioConfig& config);

// Default search box of the per-window QKD parameter optimization.
opt::SearchSpace qkd_search_space();

}  // namespace satq::scenario
