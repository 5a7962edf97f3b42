#include "satq/scenario.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <string>

#include "satq/errors.hpp"

namespace satq::scenario {

namespace {
std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* b = value.data();
    auto [ptr, ec] = std::from_chars(b, b + value.size(), out);
    if (ec != std::errc() || ptr != b + value.size())
        throw ConfigError("config key '" + key + "' has invalid numeric value '" + value + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("config key '" + key + "' has invalid boolean value '" + value + "'");
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}
}  // namespace

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);

    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line is not key = value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line has empty key or value: " + line);
        kv[key] = value;
    }

    ScenarioConfig cfg;
    double mu1 = 0, mu2 = 0, p_mu1 = 0, p_za = 0;
    bool has_mu1 = false, has_mu2 = false, has_pmu1 = false, has_pza = false;
    double t_zenith = 0.75;
    bool parametric_atm = true;
    std::string atm_table_path;

    for (const auto& [key, value] : kv) {
        if (key == "orbit.h_km") cfg.orbit.altitude_km = to_double(key, value);
        else if (key == "orbit.theta_min_deg") cfg.orbit.min_elevation_deg = to_double(key, value);
        else if (key == "orbit.xi_deg") cfg.orbit.plane_offset_deg = to_double(key, value);
        else if (key == "channel.d_t_m") cfg.channel.tx_aperture_m = to_double(key, value);
        else if (key == "channel.d_r_m") cfg.channel.rx_aperture_m = to_double(key, value);
        else if (key == "channel.w0_m") cfg.channel.beam_waist_m = to_double(key, value);
        else if (key == "channel.wavelength_m") cfg.channel.wavelength_m = to_double(key, value);
        else if (key == "channel.intrinsic_db") cfg.channel.intrinsic_loss_db = to_double(key, value);
        else if (key == "channel.atm_t_zenith") t_zenith = to_double(key, value);
        else if (key == "channel.atm_table_csv") { atm_table_path = value; parametric_atm = false; }
        else if (key == "detector.p_ec") cfg.detector.extraneous_count_prob = to_double(key, value);
        else if (key == "detector.p_ap") cfg.detector.afterpulse_prob = to_double(key, value);
        else if (key == "detector.qber_i") cfg.detector.intrinsic_qber = to_double(key, value);
        else if (key == "qkd.eps_s") cfg.security.eps_secrecy = to_double(key, value);
        else if (key == "qkd.eps_c") cfg.security.eps_correctness = to_double(key, value);
        else if (key == "qkd.f_ec") cfg.security.f_ec = to_double(key, value);
        else if (key == "qkd.num_decoys") cfg.security.num_decoys = static_cast<int>(to_double(key, value));
        else if (key == "qkd.p_zb") cfg.p_zb = to_double(key, value);
        else if (key == "qkd.mu1") { mu1 = to_double(key, value); has_mu1 = true; }
        else if (key == "qkd.mu2") { mu2 = to_double(key, value); has_mu2 = true; }
        else if (key == "qkd.p_mu1") { p_mu1 = to_double(key, value); has_pmu1 = true; }
        else if (key == "qkd.p_za") { p_za = to_double(key, value); has_pza = true; }
        else if (key == "qkpc.gamma") cfg.qkpc.gamma = to_double(key, value);
        else if (key == "qkpc.q") cfg.qkpc.q = to_double(key, value);
        else if (key == "qkpc.p_dark") cfg.qkpc.p_dark = to_double(key, value);
        else if (key == "qkpc.stray_mean") cfg.qkpc.stray_mean = to_double(key, value);
        else if (key == "source.f_s_hz") cfg.source_rate_hz = to_double(key, value);
        else if (key == "run.window_s") cfg.window_s = to_double(key, value);
        else if (key == "run.loss_csv") cfg.loss_csv = value;
        else if (key == "run.out_dir") cfg.out_dir = value;
        else if (key == "run.seed") cfg.seed = static_cast<std::uint64_t>(to_double(key, value));
        else if (key == "run.workers") cfg.workers = static_cast<int>(to_double(key, value));
        else if (key == "run.warm_start") cfg.warm_start = to_bool(key, value);
        else if (key == "run.optimizer_restarts") cfg.optimizer_restarts = static_cast<int>(to_double(key, value));
        else if (key == "run.optimizer_max_evals") cfg.optimizer_max_evals = static_cast<int>(to_double(key, value));
        else throw ConfigError("unknown config key '" + key + "'");
    }

    if (parametric_atm) {
        cfg.channel.atmosphere = channel::ParametricAtmosphere{t_zenith};
    } else {
        cfg.channel.atmosphere = channel::load_atmosphere_table_csv(atm_table_path);
    }

    const int fixed = has_mu1 + has_mu2 + has_pmu1 + has_pza;
    if (fixed == 4) {
        detstat::ProtocolParams p;
        p.mu1 = mu1;
        p.mu2 = mu2;
        p.p_mu1 = p_mu1;
        p.p_za = p_za;
        p.p_zb = cfg.p_zb;
        cfg.fixed_params = p;
    } else if (fixed != 0) {
        throw ConfigError(
            "fixed-parameter runs require all of qkd.mu1, qkd.mu2, qkd.p_mu1, qkd.p_za");
    }

    validate_config(cfg);
    return cfg;
}

void validate_config(const ScenarioConfig& cfg) {
    require(cfg.orbit.altitude_km > 0, "orbit.h_km must be > 0");
    require(cfg.orbit.min_elevation_deg >= 0 && cfg.orbit.min_elevation_deg < 90,
            "orbit.theta_min_deg must be in [0, 90)");
    require(cfg.window_s > 0, "run.window_s must be > 0");
    require(cfg.channel.tx_aperture_m > 0, "channel.d_t_m must be > 0");
    require(cfg.channel.rx_aperture_m > 0, "channel.d_r_m must be > 0");
    require(cfg.channel.beam_waist_m > 0, "channel.w0_m must be > 0");
    require(cfg.channel.beam_waist_m <= cfg.channel.tx_aperture_m / 2 + 1e-12,
            "channel.w0_m must not exceed channel.d_t_m / 2");
    require(cfg.channel.wavelength_m > 0, "channel.wavelength_m must be > 0");
    require(cfg.channel.intrinsic_loss_db >= 0, "channel.intrinsic_db must be >= 0");
    if (const auto* atm = std::get_if<channel::ParametricAtmosphere>(&cfg.channel.atmosphere))
        require(atm->zenith_transmittance > 0 && atm->zenith_transmittance <= 1,
                "channel.atm_t_zenith must be in (0, 1]");
    require(cfg.detector.extraneous_count_prob >= 0 && cfg.detector.extraneous_count_prob < 1,
            "detector.p_ec must be in [0, 1)");
    require(cfg.detector.afterpulse_prob >= 0 && cfg.detector.afterpulse_prob < 1,
            "detector.p_ap must be in [0, 1)");
    require(cfg.detector.intrinsic_qber >= 0 && cfg.detector.intrinsic_qber < 1,
            "detector.qber_i must be in [0, 1)");
    require(cfg.security.eps_secrecy > 0 && cfg.security.eps_secrecy < 1,
            "qkd.eps_s must be in (0, 1)");
    require(cfg.security.eps_correctness > 0 && cfg.security.eps_correctness < 1,
            "qkd.eps_c must be in (0, 1)");
    require(cfg.security.f_ec >= 1, "qkd.f_ec must be >= 1");
    require(cfg.security.num_decoys == 1, "qkd.num_decoys: only 1 is implemented");
    require(cfg.p_zb > 0 && cfg.p_zb < 1, "qkd.p_zb must be in (0, 1)");
    if (cfg.fixed_params) {
        const auto& p = *cfg.fixed_params;
        require(p.mu2 > 0 && p.mu1 > p.mu2,
                "qkd.mu1/qkd.mu2 violate the invariant 0 < mu2 < mu1");
        require(p.p_mu1 > 0 && p.p_mu1 < 1, "qkd.p_mu1 must be in (0, 1)");
        require(p.p_za > 0 && p.p_za < 1, "qkd.p_za must be in (0, 1)");
    }
    require(cfg.qkpc.gamma > 0 && cfg.qkpc.gamma < 1, "qkpc.gamma must be in (0, 1)");
    require(cfg.qkpc.q > 0 && cfg.qkpc.q < 1, "qkpc.q must be in (0, 1)");
    require(cfg.qkpc.p_dark >= 0, "qkpc.p_dark must be >= 0");
    require(cfg.qkpc.stray_mean >= 0, "qkpc.stray_mean must be >= 0");
    require(cfg.source_rate_hz > 0, "source.f_s_hz must be > 0");
    require(cfg.workers >= 1, "run.workers must be >= 1");
    require(cfg.optimizer_restarts >= 1, "run.optimizer_restarts must be >= 1");
    require(cfg.optimizer_max_evals >= 10, "run.optimizer_max_evals must be >= 10");
}

opt::SearchSpace qkd_search_space() {
    opt::SearchSpace space;
    // order: mu1, mu2, p_mu1, p_za. The p_za floor sits at 0.2: near the
    // cutoff loss the optimum drops to ~0.22-0.28 to feed the monitoring
    // basis, and a higher floor truncates the pass edges.
    space.bounds = {{0.1, 1.2}, {0.005, 0.5}, {0.05, 0.95}, {0.2, 0.99}};
    space.constraints = {{0, 1, 0.01}};
    return space;
}

}  // namespace satq::scenario
