#include "satq/detstat.hpp"

#include <algorithm>
#include <cmath>

#include "satq/errors.hpp"
#include "satq/rng.hpp"

namespace satq::detstat {

namespace {
void check_params(const ProtocolParams& p) {
    if (!(p.mu2 > 0.0 && p.mu1 > p.mu2)) throw ConfigError("requires 0 < mu2 < mu1");
    if (!(p.p_mu1 > 0.0 && p.p_mu1 < 1.0)) throw ConfigError("p_mu1 must be in (0,1)");
    if (!(p.p_za > 0.0 && p.p_za < 1.0)) throw ConfigError("p_za must be in (0,1)");
    if (!(p.p_zb > 0.0 && p.p_zb < 1.0)) throw ConfigError("p_zb must be in (0,1)");
}
}  // namespace

double click_probability(double mu, double eta, const DetectorModel& detector) {
    const double no_click = (1.0 - 2.0 * detector.extraneous_count_prob) * std::exp(-eta * mu);
    const double d = (1.0 + detector.afterpulse_prob) * (1.0 - no_click);
    return std::clamp(d, 0.0, 1.0);
}

double error_probability(double mu, double eta, const DetectorModel& detector) {
    const double d = click_probability(mu, eta, detector);
    const double e = detector.extraneous_count_prob +
                     detector.intrinsic_qber * (-std::expm1(-eta * mu));
    return std::clamp(e, 0.0, d);
}

CountStatistics expected_counts(const ProtocolParams& params, double eta,
                                const PulseBudget& budget, const DetectorModel& detector) {
    check_params(params);
    const double n = static_cast<double>(budget.n_pulses());
    const double p2 = 1.0 - params.p_mu1;
    const double zz = params.p_za * params.p_zb;
    const double xx = (1.0 - params.p_za) * (1.0 - params.p_zb);
    const double d1 = click_probability(params.mu1, eta, detector);
    const double d2 = click_probability(params.mu2, eta, detector);
    const double e1 = error_probability(params.mu1, eta, detector);
    const double e2 = error_probability(params.mu2, eta, detector);

    CountStatistics c;
    c.n_z_mu1 = n * params.p_mu1 * zz * d1;
    c.n_z_mu2 = n * p2 * zz * d2;
    c.m_z_mu1 = n * params.p_mu1 * zz * e1;
    c.m_z_mu2 = n * p2 * zz * e2;
    c.n_x_mu1 = n * params.p_mu1 * xx * d1;
    c.n_x_mu2 = n * p2 * xx * d2;
    c.m_x_mu1 = n * params.p_mu1 * xx * e1;
    c.m_x_mu2 = n * p2 * xx * e2;
    return c;
}

MonteCarloResult monte_carlo_counts(const ProtocolParams& params, double eta,
                                    const PulseBudget& budget, const DetectorModel& detector,
                                    std::uint64_t seed) {
    check_params(params);
    const std::uint64_t n_pulses = budget.n_pulses();
    if (n_pulses > 1'000'000'000ULL)
        throw BudgetTooLarge("monte_carlo_counts limited to 1e9 pulses");

    Rng rng(seed);
    MonteCarloResult result;
    const double p_extraneous = 2.0 * detector.extraneous_count_prob;

    for (std::uint64_t i = 0; i < n_pulses; ++i) {
        const bool use_mu1 = rng.bernoulli(params.p_mu1);
        const double mu = use_mu1 ? params.mu1 : params.mu2;

        const int photons = rng.poisson(mu);
        bool survived = false;
        for (int k = 0; k < photons; ++k) {
            if (rng.bernoulli(eta)) {
                survived = true;
                break;
            }
        }
        const bool extraneous = rng.bernoulli(p_extraneous);
        if (!survived && !extraneous) continue;

        // bases are independent of the click process, so they can be
        // sampled lazily for clicking pulses only
        const bool alice_z = rng.bernoulli(params.p_za);
        const bool bob_z = rng.bernoulli(params.p_zb);
        const bool afterpulse = rng.bernoulli(detector.afterpulse_prob);
        if (alice_z != bob_z) continue;  // sifted away

        // a photon click errs at the intrinsic QBER; an extraneous-only
        // click lands on either detector with equal probability
        const bool error = survived ? rng.bernoulli(detector.intrinsic_qber) : rng.bernoulli(0.5);
        const double events = afterpulse ? 2.0 : 1.0;

        if (alice_z) {
            (use_mu1 ? result.counts.n_z_mu1 : result.counts.n_z_mu2) += events;
            if (error) (use_mu1 ? result.counts.m_z_mu1 : result.counts.m_z_mu2) += 1.0;
            if (photons == 0) result.truth.vacuum_clicks_z += static_cast<std::int64_t>(events);
            if (photons == 1)
                result.truth.single_photon_clicks_z += static_cast<std::int64_t>(events);
        } else {
            (use_mu1 ? result.counts.n_x_mu1 : result.counts.n_x_mu2) += events;
            if (error) (use_mu1 ? result.counts.m_x_mu1 : result.counts.m_x_mu2) += 1.0;
            if (photons == 1) {
                result.truth.single_photon_clicks_x += static_cast<std::int64_t>(events);
                if (error) result.truth.single_photon_errors_x += 1;
            }
        }
    }
    return result;
}

}  // namespace satq::detstat
