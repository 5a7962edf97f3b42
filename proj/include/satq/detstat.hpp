#pragma once

#include <cstdint>

namespace satq::detstat {

struct DetectorModel {
    double extraneous_count_prob = 1e-8;  // per pulse
    double afterpulse_prob = 0.001;
    double intrinsic_qber = 0.001;
};

// Signal/decoy intensities and basis probabilities of the three-state
// one-decoy protocol. Bob's Z probability is fixed by the receiver optics.
struct ProtocolParams {
    double mu1 = 0.81;
    double mu2 = 0.12;
    double p_mu1 = 0.76;
    double p_za = 0.88;
    double p_zb = 0.9;
};

struct PulseBudget {
    double source_rate_hz = 1e9;
    double duration_s = 1.0;
    std::uint64_t n_pulses() const {
        return static_cast<std::uint64_t>(source_rate_hz * duration_s + 0.5);
    }
};

// Sifted detection (n) and error (m) counts per basis and intensity.
// Real-valued when produced as expectations, integral from the Monte Carlo.
struct CountStatistics {
    double n_z_mu1 = 0, n_z_mu2 = 0;
    double m_z_mu1 = 0, m_z_mu2 = 0;
    double n_x_mu1 = 0, n_x_mu2 = 0;
    double m_x_mu1 = 0, m_x_mu2 = 0;
    double n_z() const { return n_z_mu1 + n_z_mu2; }
    double n_x() const { return n_x_mu1 + n_x_mu2; }
    double m_z() const { return m_z_mu1 + m_z_mu2; }
    double m_x() const { return m_x_mu1 + m_x_mu2; }
};

// Photon-number-resolved tallies known only to the simulation oracle.
struct GroundTruthCounts {
    std::int64_t vacuum_clicks_z = 0;
    std::int64_t single_photon_clicks_z = 0;
    std::int64_t single_photon_clicks_x = 0;
    std::int64_t single_photon_errors_x = 0;
};

// Expected detection probability of a weak coherent pulse of mean photon
// number mu through a channel of transmittance eta, including extraneous
// counts and afterpulse inflation.
double click_probability(double mu, double eta, const DetectorModel& detector);

// Expected per-pulse error probability, clamped to [0, click_probability].
// Extraneous clicks land on the wrong detector half of the time; photon
// clicks err at the intrinsic QBER.
double error_probability(double mu, double eta, const DetectorModel& detector);

// Expectation counts after basis sifting.
CountStatistics expected_counts(const ProtocolParams& params, double eta,
                                const PulseBudget& budget, const DetectorModel& detector);

struct MonteCarloResult {
    CountStatistics counts;
    GroundTruthCounts truth;
};

// Pulse-level simulation: per pulse an intensity, bases for both parties,
// a Poisson photon number, independent photon transmission, extraneous
// counts, afterpulses and error assignment. Deterministic for a fixed seed.
// Throws BudgetTooLarge above 1e9 pulses.
MonteCarloResult monte_carlo_counts(const ProtocolParams& params, double eta,
                                    const PulseBudget& budget, const DetectorModel& detector,
                                    std::uint64_t seed);

}  // namespace satq::detstat
