#pragma once

#include <string>
#include <vector>

#include "satq/scenario.hpp"

namespace satq::cli {

// Exit codes shared by the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitNumericalFailure = 2;
inline constexpr int kExitValidationFailure = 3;

// Runs orbit -> channel -> per-window QKD optimization and per-window QKPC
// optimization; writes qkd_pass.csv, qkpc_pass.csv and summary.json (plus
// SVG plots when config.plots is set) into config.out_dir.
int cmd_simulate_pass(const scenario::ScenarioConfig& config);

// Re-optimizes the zenith key rate for each transmitter aperture, with the
// beam waist tracking half the aperture; writes aperture_sweep.csv.
int cmd_aperture_sweep(const scenario::ScenarioConfig& config,
                       const std::vector<double>& apertures_m);

// Optimized private communication rates over the pass; writes qkpc_pass.csv.
int cmd_qkpc_profile(const scenario::ScenarioConfig& config);

// Statistical validation suite; prints one line per check and a failure
// table when anything misses its threshold.
int cmd_validate(const scenario::ScenarioConfig& config, int trials);

}  // namespace satq::cli
