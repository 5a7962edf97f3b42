#pragma once

#include <cstdint>
#include <vector>

#include "satq/channel.hpp"

namespace satq::qkpc {

// On-off keying over a lossy bosonic wiretap channel. gamma is the fraction
// of the legitimate channel efficiency available to the eavesdropper.
struct QkpcParams {
    double mu = 0.0;          // mean photon number of the ON pulse
    double q = 0.5;           // probability of sending vacuum
    double gamma = 0.1;       // eavesdropper channel degradation
    double p_dark = 1e-8;     // dark-count probability per detection slot
    double stray_mean = 0.0;  // mean stray-light photons at the detector
};

struct QkpcResult {
    double eps0 = 1.0;       // P(no click | vacuum sent)
    double eps1 = 1.0;       // P(no click | ON pulse sent)
    double eps_star = 0.5;   // eavesdropper's optimal discrimination error
    double c_p = 0.0;        // private capacity, bits per channel use
    double r_dw = 0.0;       // Devetak-Winter rate, bits per channel use
    double rate_bps = 0.0;   // c_p * source rate
    double mu_opt = 0.0;
    double q_opt = 0.5;
    bool optimum_found = true;  // false when no positive capacity exists
};

// No-click probabilities for the two OOK symbols.
//   eps0 = (1 - p_dark) e^(-stray),  eps1 = (1 - p_dark) e^(-(eta mu + stray))
void click_complements(double mu, double eta, const QkpcParams& params, double& eps0,
                       double& eps1);

// Optimal discrimination error of the eavesdropper between the two symbols:
//   eps* = (1 - sqrt(1 - 4 q (1-q) e^(-eta gamma mu))) / 2
double eve_optimal_error(double mu, double eta, const QkpcParams& params);

// Private capacity of OOK, clipped to its positive part.
double private_capacity(double mu, double eta, const QkpcParams& params);

// Reduced Devetak-Winter achievable rate, clipped to its positive part.
double devetak_winter_rate(double mu, double eta, const QkpcParams& params);

// Maximizes the private capacity over (mu, q) with eta*mu restricted to
// [1e-3, 50] and q to [0.05, 0.95]; the mu search runs in log space.
QkpcResult optimize_point(double eta, const QkpcParams& params, double source_rate_hz,
                          std::uint64_t seed = 1);

// One optimized result per loss sample.
std::vector<QkpcResult> qkpc_profile(const channel::LossProfile& profile,
                                     const QkpcParams& params, double source_rate_hz,
                                     std::uint64_t seed = 1);

}  // namespace satq::qkpc
