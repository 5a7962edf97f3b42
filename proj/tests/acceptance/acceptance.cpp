// Acceptance suite: one self-contained check per criterion, each printing a
// single [PASS]/[FAIL] line with the measured quantities. Run with a list of
// criterion ids (A1..A8) or no arguments for all. Exit code is the number of
// failed criteria.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "satq/commands.hpp"
#include "satq/passsim.hpp"
#include "satq/report.hpp"
#include "satq/rng.hpp"
#include "satq/validate.hpp"

using namespace satq;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

scenario::ScenarioConfig reference_scenario() {
    scenario::ScenarioConfig cfg;  // defaults are the reference values
    cfg.seed = 1;
    return cfg;
}

double optimized_skr(const scenario::ScenarioConfig& cfg, double loss_db) {
    return sim::optimize_qkd_window(cfg, channel::eta_from_db(loss_db), 7).analysis.skr_hz;
}

// Highest loss with positive optimized key, bisected on the monotone curve.
double bisect_cutoff(const scenario::ScenarioConfig& cfg, double lo, double hi) {
    while (hi - lo > 0.02) {
        const double mid = 0.5 * (lo + hi);
        (optimized_skr(cfg, mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Loss at which the optimized SKR crosses the target rate.
double bisect_rate(const scenario::ScenarioConfig& cfg, double target_hz, double lo, double hi) {
    while (hi - lo > 0.002) {
        const double mid = 0.5 * (lo + hi);
        (optimized_skr(cfg, mid) > target_hz ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double default_zenith_loss_db(const scenario::ScenarioConfig& cfg) {
    const double geo = channel::db_from_eta(
        channel::geometric_transmittance(cfg.orbit.altitude_km, cfg.channel));
    const double atm = channel::db_from_eta(
        channel::atmospheric_transmittance(std::numbers::pi / 2, cfg.channel.atmosphere));
    return geo + atm + cfg.channel.intrinsic_loss_db;
}

// Zenith-anchored scenario: the elevation dependence keeps the default
// parametric atmosphere; the constant intrinsic term absorbs the offset
// between the modeled zenith loss and the calibrated value (the atmosphere
// exponent cannot lower the zenith total, see README).
scenario::ScenarioConfig calibrated_scenario(double zenith_loss_db) {
    auto cfg = reference_scenario();
    cfg.channel.intrinsic_loss_db += zenith_loss_db - default_zenith_loss_db(cfg);
    if (cfg.channel.intrinsic_loss_db < 0.0) cfg.channel.intrinsic_loss_db = 0.0;
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

char buf[512];

// --- A1: QKD cutoff loss ------------------------------------------------

Outcome a1() {
    const auto cfg = reference_scenario();
    Outcome out;
    const double skr_425 = optimized_skr(cfg, 42.5);
    const double skr_45 = optimized_skr(cfg, 45.0);
    const double cutoff = bisect_cutoff(cfg, 30.0, 46.0);
    const bool positive_at_425 = skr_425 > 0.0;
    const bool zero_at_45 = skr_45 == 0.0;
    const bool band = cutoff >= 43.6 - 1.5 && cutoff <= 43.6 + 1.5;
    out.pass = positive_at_425 && zero_at_45 && band;
    std::snprintf(buf, sizeof buf,
                  "SKL(42.5 dB) %s 0, SKL(45 dB) %s 0, bisected cutoff %.2f dB (band 42.1..45.1)",
                  positive_at_425 ? ">" : "=", zero_at_45 ? "=" : ">", cutoff);
    out.detail = buf;
    return out;
}

// --- A2: QKPC plateau ----------------------------------------------------

Outcome a2() {
    const auto cfg = reference_scenario();
    Outcome out;
    std::ostringstream detail;
    for (double loss : {30.0, 40.0, 50.0, 60.0}) {
        const double eta = channel::eta_from_db(loss);
        const auto r = qkpc::optimize_point(eta, cfg.qkpc, cfg.source_rate_hz, 11);
        const double etamu = eta * r.mu_opt;
        const bool ok = r.rate_bps >= 630e6 && r.rate_bps <= 770e6 && etamu >= 3.0 &&
                        etamu <= 4.5 && cfg.qkpc.gamma * etamu >= 0.3 &&
                        cfg.qkpc.gamma * etamu <= 0.45;
        out.pass = out.pass && ok;
        detail << loss << "dB:" << r.rate_bps / 1e6 << "MHz,eta*mu=" << etamu << " ";
    }
    const auto r = qkpc::optimize_point(3.5e-6, cfg.qkpc, cfg.source_rate_hz, 11);
    const bool mu_band = r.mu_opt >= 0.7e6 && r.mu_opt <= 1.4e6;
    out.pass = out.pass && mu_band;
    detail << "mu*(eta=3.5e-6)=" << r.mu_opt;
    out.detail = detail.str();
    return out;
}

// --- A3: zenith calibration consistency ----------------------------------

Outcome a3() {
    const auto cfg = reference_scenario();
    Outcome out;
    const double target = 80.8e3;
    const double l0 = bisect_rate(cfg, target, 25.0, 38.0);
    const auto w = sim::optimize_qkd_window(cfg, channel::eta_from_db(l0), 7);
    const double skr = w.analysis.skr_hz;
    const bool skr_ok = l0 > 25.02 && l0 < 37.98 && std::fabs(skr - target) <= 0.05 * target;
    const bool qber_ok = w.analysis.qber_z >= 0.0005 && w.analysis.qber_z <= 0.0015;
    const bool mu1_ok = w.params.mu1 >= 0.7 && w.params.mu1 <= 0.9;
    const bool mu2_ok = w.params.mu2 >= 0.08 && w.params.mu2 <= 0.20;
    const bool pmu1_ok = w.params.p_mu1 >= 0.6 && w.params.p_mu1 <= 0.9;
    const bool pza_ok = w.params.p_za >= 0.8 && w.params.p_za <= 0.95;
    out.pass = skr_ok && qber_ok && mu1_ok && mu2_ok && pmu1_ok && pza_ok;
    std::snprintf(buf, sizeof buf,
                  "L0 %.2f dB SKR %.0f Hz [%s] QZ %.4f%% [%s] mu1 %.3f [%s] mu2 %.3f [%s] "
                  "p_mu1 %.3f [%s] p_za %.3f [%s]",
                  l0, skr, skr_ok ? "ok" : "FAIL", 100 * w.analysis.qber_z,
                  qber_ok ? "ok" : "FAIL", w.params.mu1, mu1_ok ? "ok" : "FAIL", w.params.mu2,
                  mu2_ok ? "ok" : "FAIL", w.params.p_mu1, pmu1_ok ? "ok" : "FAIL", w.params.p_za,
                  pza_ok ? "ok" : "FAIL");
    out.detail = buf;
    return out;
}

// --- A4: per-pass totals --------------------------------------------------

Outcome a4() {
    const auto base = reference_scenario();
    const double l0 = bisect_rate(base, 80.8e3, 25.0, 38.0);
    const auto cfg = calibrated_scenario(l0);
    const auto report = sim::simulate_pass(cfg);
    Outcome out;
    const double window = report.summary.qkd_window_s;
    const double bits = report.summary.total_skl_bits;
    const bool window_ok = window >= 304.0 * 0.75 && window <= 304.0 * 1.25;
    const bool bits_ok = bits >= 9.9e6 * 0.65 && bits <= 9.9e6 * 1.35;
    out.pass = window_ok && bits_ok;
    std::snprintf(buf, sizeof buf,
                  "zenith calibrated to %.2f dB: positive-SKL window %.0f s (band 228..380) "
                  "[%s], total %.3g bits (band 6.44e6..1.34e7) [%s]",
                  l0, window, window_ok ? "ok" : "FAIL", bits, bits_ok ? "ok" : "FAIL");
    out.detail = buf;
    return out;
}

// --- A5: statistical bound containment ------------------------------------

Outcome a5() {
    auto cfg = reference_scenario();
    cfg.fixed_params = detstat::ProtocolParams{};
    Outcome out;
    const int runs = 100;
    const auto tally = validate::containment_experiment(cfg, runs, 1e-3, 10'000'000ULL);
    const int coverage_trials = 10'000;
    const int contained = validate::chernoff_coverage_trials(
        coverage_trials, cfg.security.eps_secrecy / cfg.security.alpha,
        derive_stream(cfg.seed, "acceptance-chernoff"));
    const bool containment_ok =
        tally.s_z0_ok >= runs - 1 && tally.s_z1_ok >= runs - 1 && tally.phase_ok >= runs - 1;
    const bool coverage_ok = contained >= static_cast<int>(std::ceil(0.999 * coverage_trials));
    out.pass = containment_ok && coverage_ok;
    std::snprintf(buf, sizeof buf,
                  "containment s_z0 %d/100 s_z1 %d/100 phase %d/100 (need 99), Chernoff coverage "
                  "%d/10000 (need 9990)",
                  tally.s_z0_ok, tally.s_z1_ok, tally.phase_ok, contained);
    out.detail = buf;
    return out;
}

// --- A6: model cross-validation --------------------------------------------

Outcome a6() {
    auto cfg = reference_scenario();
    cfg.fixed_params = detstat::ProtocolParams{};
    Outcome out;
    const int runs = 100;
    const int ok_runs = validate::expectation_agreement_runs(cfg, runs, 1e-3, 1'000'000ULL);

    // monitoring-basis estimator versus the oracle's direct error tally;
    // the systematic offset is reported, not gated (the verbatim estimator
    // saturates its clamp at the reference basis split)
    const auto params = *cfg.fixed_params;
    detstat::PulseBudget budget{1e6, 1.0};
    double offset_sum = 0.0;
    int n = 0;
    for (int i = 0; i < 20; ++i) {
        const auto mc = detstat::monte_carlo_counts(params, 1e-3, budget, cfg.detector,
                                                    derive_stream(cfg.seed, "acceptance-qx", i));
        if (mc.counts.n_z() <= 0 || mc.counts.n_x() <= 0) continue;
        offset_sum += finitekey::qber_x(mc.counts, params) - mc.counts.m_x() / mc.counts.n_x();
        ++n;
    }
    out.pass = ok_runs >= runs - 1;
    std::snprintf(buf, sizeof buf,
                  "expectation agreement %d/100 runs at 5 sigma (need 99); Q_X estimator-minus-"
                  "tally offset %.4g over %d runs (reported, saturated clamp)",
                  ok_runs, n ? offset_sum / n : 0.0, n);
    out.detail = buf;
    return out;
}

// --- A7: analytic property suite -------------------------------------------

Outcome a7() {
    Outcome out;
    std::vector<std::string> failures;

    {  // entropy symmetry and bounds
        Rng rng(404);
        bool ok = finitekey::binary_entropy(0.5) == 1.0;
        for (int i = 0; ok && i < 10'000; ++i) {
            const double x = rng.uniform();
            const double h = finitekey::binary_entropy(x);
            ok = std::fabs(h - finitekey::binary_entropy(1.0 - x)) <= 1e-12 && h >= 0.0 && h <= 1.0;
        }
        if (!ok) failures.push_back("entropy");
    }
    {  // SKL non-increasing over a 50-point loss grid at fixed parameters
        const auto cfg = reference_scenario();
        detstat::ProtocolParams params;
        detstat::PulseBudget budget{cfg.source_rate_hz, cfg.window_s};
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 50; ++i) {
            const double loss = 25.0 + 30.0 * i / 49.0;
            const double skl = finitekey::analyze_block(params, channel::eta_from_db(loss), budget,
                                                        cfg.detector, cfg.security)
                                   .skl;
            if (skl > prev) {
                failures.push_back("skl_monotone");
                break;
            }
            prev = skl;
        }
    }
    {  // QKPC scale invariance
        const auto cfg = reference_scenario();
        const auto a = qkpc::optimize_point(1e-4, cfg.qkpc, cfg.source_rate_hz, 21);
        const auto b = qkpc::optimize_point(1e-5, cfg.qkpc, cfg.source_rate_hz, 22);
        if (!(std::fabs(1e-4 * a.mu_opt / (1e-5 * b.mu_opt) - 1.0) <= 0.01 &&
              std::fabs(a.c_p - b.c_p) <= 1e-4))
            failures.push_back("qkpc_scale_invariance");
    }
    {  // range checks
        const auto cfg = reference_scenario();
        Rng rng(505);
        for (int i = 0; i < 2000; ++i) {
            auto p = cfg.qkpc;
            p.q = rng.uniform(0.05, 0.95);
            const double eta = std::pow(10.0, -rng.uniform(0.0, 6.0));
            const double mu = rng.uniform(0.0, 60.0) / eta;
            const double es = qkpc::eve_optimal_error(mu, eta, p);
            const double cp = qkpc::private_capacity(mu, eta, p);
            const double rdw = qkpc::devetak_winter_rate(mu, eta, p);
            if (!(es >= 0 && es <= 0.5 && cp >= 0 && cp <= 1 && rdw >= 0 && rdw <= 1)) {
                failures.push_back("qkpc_ranges");
                break;
            }
        }
    }
    {  // dB additivity of the loss composition
        const auto cfg = reference_scenario();
        auto orbit_cfg = cfg.orbit;
        orbit_cfg.sample_interval_s = cfg.window_s;
        const auto profile =
            channel::loss_profile(orbit::pass_geometry(orbit_cfg), cfg.channel);
        for (const auto& s : profile.samples) {
            const double parts = channel::db_from_eta(s.eta_geometric) +
                                 channel::db_from_eta(s.eta_atmospheric) +
                                 channel::db_from_eta(s.eta_intrinsic);
            if (std::fabs(parts - s.loss_total_db) > 1e-9) {
                failures.push_back("db_additivity");
                break;
            }
        }
    }
    {  // bit-exact reruns of every command for a fixed seed
        auto mini = reference_scenario();
        mini.orbit.min_elevation_deg = 85.0;
        mini.optimizer_restarts = 4;
        mini.optimizer_max_evals = 400;
        mini.seed = 31337;
        const auto base = fs::temp_directory_path() / "satq-acceptance-a7";
        fs::remove_all(base);
        const std::vector<std::string> names = {"qkd_pass.csv", "qkpc_pass.csv", "summary.json",
                                                "aperture_sweep.csv"};
        std::vector<std::string> contents[2];
        bool ran_ok = true;
        for (int round = 0; round < 2 && ran_ok; ++round) {
            const auto dir = base / ("round" + std::to_string(round));
            fs::create_directories(dir);
            mini.out_dir = dir.string();
            ran_ok = cli::cmd_simulate_pass(mini) == 0 &&
                     cli::cmd_aperture_sweep(mini, {0.04, 0.08}) == 0 &&
                     cli::cmd_qkpc_profile(mini) == 0;
            for (const auto& nm : names) contents[round].push_back(slurp(dir / nm));
        }
        bool identical = ran_ok;
        for (std::size_t i = 0; identical && i < names.size(); ++i)
            identical = !contents[0][i].empty() && contents[0][i] == contents[1][i];
        // validate command determinism: identical check results on reruns
        auto va = validate::run_validation(mini, 10);
        auto vb = validate::run_validation(mini, 10);
        bool validate_same = va.size() == vb.size();
        for (std::size_t i = 0; validate_same && i < va.size(); ++i)
            validate_same = va[i].passed == vb[i].passed && va[i].detail == vb[i].detail;
        if (!identical || !validate_same) failures.push_back("deterministic_reruns");
        fs::remove_all(base);
    }

    out.pass = failures.empty();
    if (out.pass) {
        out.detail =
            "entropy, SKL monotonicity, scale invariance, ranges, dB additivity, reruns all hold";
    } else {
        out.detail = "failed:";
        for (const auto& f : failures) out.detail += " " + f;
    }
    return out;
}

// --- A8: aperture sweep -----------------------------------------------------

Outcome a8() {
    const auto base = reference_scenario();
    const double l0 = bisect_rate(base, 80.8e3, 25.0, 38.0);
    const auto cfg = calibrated_scenario(l0);
    const std::vector<double> apertures = {0.02, 0.04, 0.06, 0.08, 0.10, 0.12};
    const auto rows = sim::aperture_sweep(cfg, apertures);
    Outcome out;
    bool increasing = true;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        increasing = increasing && rows[i].skr_hz < rows[i + 1].skr_hz;
    const double ratio = rows[4].skr_hz / rows[1].skr_hz;  // 0.10 m over 0.04 m
    const bool ratio_ok = ratio >= 5.0 && ratio <= 12.0;
    out.pass = increasing && ratio_ok;
    std::snprintf(buf, sizeof buf,
                  "SKR strictly increasing over 0.02..0.12 m [%s]; SKR(0.10)/SKR(0.04) = %.2f "
                  "(band 5..12) [%s]",
                  increasing ? "ok" : "FAIL", ratio, ratio_ok ? "ok" : "FAIL");
    out.detail = buf;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        const char* id;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all = {{"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4},
                                        {"A5", a5}, {"A6", a6}, {"A7", a7}, {"A8", a8}};
    std::vector<Criterion> selected;
    for (int i = 1; i < argc; ++i)
        for (const auto& c : all)
            if (std::strcmp(argv[i], c.id) == 0) selected.push_back(c);
    if (selected.empty() && argc <= 1) selected = all;
    if (selected.empty()) {
        std::fprintf(stderr, "unknown criterion; expected A1..A8\n");
        return 64;
    }

    int failures = 0;
    for (const auto& c : selected) {
        const auto outcome = c.run();
        std::printf("[%s] %s — %s\n", outcome.pass ? "PASS" : "FAIL", c.id,
                    outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    return failures;
}
