#include "satq/finitekey.hpp"

#include <algorithm>
#include <cmath>

#include "satq/errors.hpp"

namespace satq::finitekey {

namespace {
constexpr double kLn2 = 0.6931471805599453;

double log2_checked(double x) { return std::log(x) / kLn2; }

void check_security(const SecurityParams& s) {
    if (!(s.eps_secrecy > 0.0 && s.eps_secrecy < 1.0))
        throw ConfigError("eps_secrecy must be in (0,1)");
    if (!(s.eps_correctness > 0.0 && s.eps_correctness < 1.0))
        throw ConfigError("eps_correctness must be in (0,1)");
    if (s.alpha != 19 && s.alpha != 21) throw ConfigError("alpha must be 19 or 21");
    if (!(s.f_ec >= 1.0)) throw ConfigError("f_ec must be >= 1");
    if (s.num_decoys != 1)
        throw ConfigError("only the one-decoy analysis is implemented (num_decoys = 1)");
}

// Chernoff-adjusted counts rescaled to mean-photon-number space.
struct Rescaled {
    double low;
    double high;
};

Rescaled rescale(double count, double mu, double p_mu, double eps) {
    const Interval iv = chernoff_interval(count, eps);
    const double f = std::exp(mu) / p_mu;
    return {f * iv.low, f * iv.high};
}
}  // namespace

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binary_entropy requires x in [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * log2_checked(x) - (1.0 - x) * log2_checked(1.0 - x);
}

double poisson_tau(int n, const detstat::ProtocolParams& params) {
    if (n != 0 && n != 1) throw DomainError("poisson_tau implemented for n in {0,1}");
    const double p2 = 1.0 - params.p_mu1;
    const double w1 = n == 0 ? 1.0 : params.mu1;
    const double w2 = n == 0 ? 1.0 : params.mu2;
    return params.p_mu1 * std::exp(-params.mu1) * w1 + p2 * std::exp(-params.mu2) * w2;
}

Interval chernoff_interval(double count, double eps) {
    if (count < 0.0) throw DomainError("chernoff_interval requires count >= 0");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("chernoff_interval requires eps in (0,1)");
    const double beta = std::log(1.0 / eps);
    Interval iv;
    iv.high = count + beta / 2.0 + std::sqrt(2.0 * beta * count + beta * beta / 4.0);
    iv.low = std::max(0.0, count - std::sqrt(2.0 * beta * count));
    return iv;
}

DecoyBounds decoy_bounds(const detstat::CountStatistics& counts,
                         const detstat::ProtocolParams& params, const SecurityParams& security) {
    check_security(security);
    const double mu1 = params.mu1;
    const double mu2 = params.mu2;
    if (mu1 - mu2 < 1e-6)
        throw DegenerateIntensities("decoy bounds require mu1 - mu2 >= 1e-6");

    const double p1 = params.p_mu1;
    const double p2 = 1.0 - p1;
    const double eps1 = security.eps_secrecy / security.alpha;
    const double tau0 = poisson_tau(0, params);
    const double tau1 = poisson_tau(1, params);
    const double mu_diff = mu1 - mu2;
    const double ratio2 = (mu2 * mu2) / (mu1 * mu1);

    const Rescaled nz1 = rescale(counts.n_z_mu1, mu1, p1, eps1);
    const Rescaled nz2 = rescale(counts.n_z_mu2, mu2, p2, eps1);
    const Rescaled nx1 = rescale(counts.n_x_mu1, mu1, p1, eps1);
    const Rescaled nx2 = rescale(counts.n_x_mu2, mu2, p2, eps1);
    const Rescaled mx1 = rescale(counts.m_x_mu1, mu1, p1, eps1);
    const Rescaled mx2 = rescale(counts.m_x_mu2, mu2, p2, eps1);

    DecoyBounds b;
    b.s_z0_low = std::max(0.0, tau0 * (mu1 * nz2.low - mu2 * nz1.high) / mu_diff);

    // vacuum contributions are bounded by twice the (raw) error counts
    b.s_z0_high = 2.0 * (chernoff_interval(counts.m_z_mu1, eps1).high +
                         chernoff_interval(counts.m_z_mu2, eps1).high);
    const double s_x0_high = 2.0 * (chernoff_interval(counts.m_x_mu1, eps1).high +
                                    chernoff_interval(counts.m_x_mu2, eps1).high);

    const double pre = tau1 * mu1 / (mu2 * mu_diff);
    b.s_z1_low = std::max(
        0.0, pre * (nz2.low - ratio2 * nz1.high - (1.0 - ratio2) * b.s_z0_high / tau0));
    b.s_x1_low =
        std::max(0.0, pre * (nx2.low - ratio2 * nx1.high - (1.0 - ratio2) * s_x0_high / tau0));

    b.v_x1_high = std::clamp(tau1 * (mx1.high - mx2.low) / mu_diff, 0.0, counts.n_x());
    return b;
}

double phase_error_bound(const DecoyBounds& bounds, const SecurityParams& security) {
    if (bounds.s_x1_low <= 0.0 || bounds.s_z1_low <= 0.0) return 0.5;
    const double ratio = bounds.v_x1_high / bounds.s_x1_low;
    if (ratio >= 0.5) return 0.5;

    const double a = security.eps_secrecy;
    const double b = std::clamp(ratio, 1e-12, 0.5);
    const double c = bounds.s_z1_low;
    const double d = bounds.s_x1_low;
    const double bb = (1.0 - b) * b;
    const double factor = (c + d) * bb / (c * d * kLn2);
    const double arg = (c + d) / (c * d * bb) * (21.0 / a) * (21.0 / a);
    const double gamma = std::sqrt(factor * log2_checked(arg));
    return std::min(0.5, ratio + gamma);
}

double lambda_ec(double n_z, double qber_z, const SecurityParams& security) {
    if (n_z < 0.0) throw DomainError("lambda_ec requires n_z >= 0");
    if (!(qber_z >= 0.0 && qber_z <= 0.5)) throw DomainError("lambda_ec requires qber in [0,0.5]");
    return security.f_ec * n_z * binary_entropy(qber_z);
}

double secret_key_length(const SklInputs& inputs, const SecurityParams& security) {
    check_security(security);
    const double penalty = 6.0 * log2_checked(security.alpha / security.eps_secrecy) +
                           log2_checked(2.0 / security.eps_correctness);
    const double raw = inputs.s_z0_low +
                       inputs.s_z1_low * (1.0 - binary_entropy(std::min(inputs.phi_z, 0.5))) -
                       inputs.lambda_ec - penalty;
    return std::max(0.0, std::floor(raw));
}

double qber_x(const detstat::CountStatistics& counts, const detstat::ProtocolParams& params) {
    const double n_z = counts.n_z();
    if (n_z <= 0.0) throw ZeroDivision("qber_x requires n_z > 0");
    const double p_za = params.p_za;
    const double p_zb = params.p_zb;
    const double p_xa = 1.0 - p_za;
    const double p_xb = 1.0 - p_zb;

    const double n_ad = counts.m_x();                 // A detections for D states
    const double n_az = n_z * p_xb / (2.0 * p_zb);    // A detections for Z states
    const double n_zd = n_z * p_xa / p_za;            // Z detections for D states

    const double first = n_ad / (p_xa * p_xb);
    const double inner = first + n_az / (p_za * p_xb) - n_zd / (p_xa * p_zb) +
                         2.0 * n_z / (p_za * p_xb);
    const double q = 0.5 * (p_za * p_zb / n_z) * (first + std::max(0.0, inner));
    return std::clamp(q, 0.0, 1.0);
}

KeyAnalysis analyze_counts(const detstat::CountStatistics& counts,
                           const detstat::ProtocolParams& params, double duration_s,
                           const SecurityParams& security) {
    check_security(security);
    KeyAnalysis analysis;
    const double n_z = counts.n_z();
    if (n_z <= 0.0) {
        analysis.qber_z = 0.5;  // undefined, reported pessimistically
        analysis.qber_x = 0.0;
        return analysis;
    }
    analysis.bounds = decoy_bounds(counts, params, security);
    analysis.phi_z = phase_error_bound(analysis.bounds, security);
    analysis.qber_z = std::clamp(counts.m_z() / n_z, 0.0, 0.5);
    analysis.qber_x = qber_x(counts, params);
    analysis.lambda_ec = lambda_ec(n_z, analysis.qber_z, security);
    SklInputs inputs{analysis.bounds.s_z0_low, analysis.bounds.s_z1_low, analysis.phi_z,
                     analysis.lambda_ec};
    analysis.skl = secret_key_length(inputs, security);
    analysis.skr_hz = duration_s > 0.0 ? analysis.skl / duration_s : 0.0;
    return analysis;
}

KeyAnalysis analyze_block(const detstat::ProtocolParams& params, double eta,
                          const detstat::PulseBudget& budget,
                          const detstat::DetectorModel& detector,
                          const SecurityParams& security) {
    const auto counts = detstat::expected_counts(params, eta, budget, detector);
    return analyze_counts(counts, params, budget.duration_s, security);
}

}  // namespace satq::finitekey
