#pragma once

#include "satq/detstat.hpp"

namespace satq::finitekey {

struct SecurityParams {
    double eps_secrecy = 1e-9;
    double eps_correctness = 1e-15;
    int alpha = 19;       // epsilon allocations: 19 for one decoy, 21 for two
    double f_ec = 1.16;   // error-correction efficiency
    int num_decoys = 1;   // only the one-decoy analysis is implemented
};

struct DecoyBounds {
    double s_z0_low = 0;
    double s_z0_high = 0;
    double s_z1_low = 0;
    double v_x1_high = 0;
    double s_x1_low = 0;
};

struct KeyAnalysis {
    DecoyBounds bounds;
    double phi_z = 0.5;      // phase error bound, in [0, 0.5]
    double lambda_ec = 0;    // error-correction leakage, bits
    double skl = 0;          // secret key length, bits (floored, >= 0)
    double skr_hz = 0;       // skl / block duration
    double qber_z = 0.5;
    double qber_x = 0;
};

// Binary Shannon entropy; throws DomainError outside [0,1].
double binary_entropy(double x);

// Probability that an emitted pulse carries exactly n photons (n in {0,1}),
// averaged over the two-intensity mixture.
double poisson_tau(int n, const detstat::ProtocolParams& params);

struct Interval {
    double low;
    double high;
};

// Two-sided Chernoff interval for the mean of a counting observable:
//   high = c + beta/2 + sqrt(2 beta c + beta^2/4),  low = max(0, c - sqrt(2 beta c)),
// with beta = ln(1/eps).
Interval chernoff_interval(double count, double eps);

// One-decoy bounds on vacuum and single-photon contributions, built from
// Chernoff-adjusted counts rescaled by e^mu / p_mu.
// Throws DegenerateIntensities when mu1 - mu2 < 1e-6.
DecoyBounds decoy_bounds(const detstat::CountStatistics& counts,
                         const detstat::ProtocolParams& params, const SecurityParams& security);

// Phase error rate bound from the X-basis single-photon statistics plus the
// finite-sample correction term; pessimistic 0.5 when the statistics vanish.
double phase_error_bound(const DecoyBounds& bounds, const SecurityParams& security);

// Bits disclosed during error correction: f_ec * n_z * h(qber_z).
double lambda_ec(double n_z, double qber_z, const SecurityParams& security);

struct SklInputs {
    double s_z0_low = 0;
    double s_z1_low = 0;
    double phi_z = 0.5;
    double lambda_ec = 0;
};

// Secret key length: floor(s_z0 + s_z1 (1 - h(phi)) - lambda_EC
//                          - 6 log2(alpha/eps_s) - log2(2/eps_c)), clipped at 0.
double secret_key_length(const SklInputs& inputs, const SecurityParams& security);

// Monitoring-basis QBER estimator of the three-state protocol, evaluated
// verbatim including the cross-basis terms, then clamped to [0,1]. The
// cross-basis tallies n(A,Z) and n(Z,D) are not part of the sifted counts
// and are reconstructed in expectation from n_Z and the basis probabilities:
//   n(A,Z) = n_Z * p_xb / (2 p_zb),   n(Z,D) = n_Z * p_xa / p_za.
// Throws ZeroDivision when n_Z = 0.
double qber_x(const detstat::CountStatistics& counts, const detstat::ProtocolParams& params);

// Full pipeline for one accumulation block from expectation counts.
KeyAnalysis analyze_block(const detstat::ProtocolParams& params, double eta,
                          const detstat::PulseBudget& budget,
                          const detstat::DetectorModel& detector,
                          const SecurityParams& security);

// Same pipeline on externally supplied (e.g. simulated) counts.
KeyAnalysis analyze_counts(const detstat::CountStatistics& counts,
                           const detstat::ProtocolParams& params, double duration_s,
                           const SecurityParams& security);

}  // namespace satq::finitekey
