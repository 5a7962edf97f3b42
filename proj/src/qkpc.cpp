#include "satq/qkpc.hpp"

#include <algorithm>
#include <cmath>

#include "satq/errors.hpp"
#include "satq/finitekey.hpp"
#include "satq/optimize.hpp"

namespace satq::qkpc {

namespace {
double entropy(double x) { return finitekey::binary_entropy(std::clamp(x, 0.0, 1.0)); }

void check_params(const QkpcParams& p) {
    if (!(p.mu >= 0.0)) throw ConfigError("qkpc mu must be >= 0");
    if (!(p.q > 0.0 && p.q < 1.0)) throw ConfigError("qkpc q must be in (0,1)");
    if (!(p.gamma > 0.0 && p.gamma < 1.0)) throw ConfigError("qkpc gamma must be in (0,1)");
    if (!(p.p_dark >= 0.0 && p.stray_mean >= 0.0))
        throw ConfigError("qkpc noise terms must be >= 0");
}
}  // namespace

void click_complements(double mu, double eta, const QkpcParams& params, double& eps0,
                       double& eps1) {
    eps0 = (1.0 - params.p_dark) * std::exp(-params.stray_mean);
    eps1 = (1.0 - params.p_dark) * std::exp(-(eta * mu + params.stray_mean));
}

double eve_optimal_error(double mu, double eta, const QkpcParams& params) {
    const double q = params.q;
    const double inner = 1.0 - 4.0 * q * (1.0 - q) * std::exp(-eta * params.gamma * mu);
    return (1.0 - std::sqrt(std::max(inner, 0.0))) / 2.0;
}

double private_capacity(double mu, double eta, const QkpcParams& params) {
    double eps0 = 0.0, eps1 = 0.0;
    click_complements(mu, eta, params, eps0, eps1);
    const double eps_star = eve_optimal_error(mu, eta, params);
    const double value = entropy(eps_star) + entropy((eps0 + eps1) / 2.0) -
                         (entropy(eps1) + entropy(eps0)) / 2.0 - 1.0;
    return std::max(0.0, value);
}

double devetak_winter_rate(double mu, double eta, const QkpcParams& params) {
    double eps0 = 0.0, eps1 = 0.0;
    click_complements(mu, eta, params, eps0, eps1);
    const double eps_star = eve_optimal_error(mu, eta, params);
    const double value = entropy((eps0 + eps1) / 2.0) - (entropy(eps1) + entropy(eps0)) / 2.0 -
                         entropy((1.0 + eps_star) / 2.0);
    return std::max(0.0, value);
}

QkpcResult optimize_point(double eta, const QkpcParams& params, double source_rate_hz,
                          std::uint64_t seed) {
    check_params(params);
    if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("qkpc optimize_point requires eta in (0,1]");

    opt::SearchSpace space;
    space.bounds = {{std::log(1e-3), std::log(50.0)}, {0.05, 0.95}};
    opt::OptimizerConfig config;
    config.restarts = 6;
    config.max_evals = 600;
    config.seed = seed;

    QkpcParams trial = params;
    const auto objective = [&](const std::vector<double>& x) {
        trial.q = x[1];
        return private_capacity(std::exp(x[0]) / eta, eta, trial);
    };
    const auto result = opt::maximize(objective, space, config);

    QkpcResult out;
    out.mu_opt = std::exp(result.point[0]) / eta;
    out.q_opt = result.point[1];
    trial.q = out.q_opt;
    trial.mu = out.mu_opt;
    click_complements(out.mu_opt, eta, trial, out.eps0, out.eps1);
    out.eps_star = eve_optimal_error(out.mu_opt, eta, trial);
    out.c_p = private_capacity(out.mu_opt, eta, trial);
    out.r_dw = devetak_winter_rate(out.mu_opt, eta, trial);
    out.rate_bps = out.c_p * source_rate_hz;
    out.optimum_found = result.best_value > 0.0;
    if (!out.optimum_found) {
        out.c_p = 0.0;
        out.rate_bps = 0.0;
    }
    return out;
}

std::vector<QkpcResult> qkpc_profile(const channel::LossProfile& profile,
                                     const QkpcParams& params, double source_rate_hz,
                                     std::uint64_t seed) {
    if (profile.samples.empty()) throw Error("qkpc_profile: empty loss profile");
    std::vector<QkpcResult> results;
    results.reserve(profile.samples.size());
    for (const auto& sample : profile.samples)
        results.push_back(optimize_point(sample.eta_total, params, source_rate_hz, seed));
    return results;
}

}  // namespace satq::qkpc
