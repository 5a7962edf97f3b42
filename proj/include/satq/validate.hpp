#pragma once

#include <string>
#include <vector>

#include "satq/scenario.hpp"

namespace satq::validate {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Statistical and analytic self-checks:
//  - decoy/phase bound containment against the pulse-level oracle
//  - Chernoff interval coverage of a binomial mean
//  - expectation counts versus oracle counts at 5-sigma
//  - monitoring-basis QBER estimator offset report
//  - analytic property suite (entropy, monotonicity, scale invariance,
//    dB additivity, range checks, bit-exact command reruns)
// `trials` scales every repeated experiment; the containment and 5-sigma
// checks accept at >= trials - 1, coverage at >= 99.9%.
std::vector<CheckResult> run_validation(const scenario::ScenarioConfig& config, int trials);

// Containment experiment alone (used at reduced scale in unit tests).
struct ContainmentTally {
    int runs = 0;
    int s_z0_ok = 0;
    int s_z1_ok = 0;
    int phase_ok = 0;
};
ContainmentTally containment_experiment(const scenario::ScenarioConfig& config, int runs,
                                        double eta, std::uint64_t n_pulses);

// Chernoff coverage of the mean of Binomial(2e6, 1/2), sampled exactly.
int chernoff_coverage_trials(int trials, double eps, std::uint64_t seed);

// Oracle-versus-expectation agreement runs (the "5 sigma" criterion uses a
// two-sided normal test above mean 25 and exact Poisson quantiles below).
int expectation_agreement_runs(const scenario::ScenarioConfig& config, int runs, double eta,
                               std::uint64_t n_pulses);

}  // namespace satq::validate
