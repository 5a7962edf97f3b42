#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace satq::opt {

// Box bounds plus ordered-pair constraints of the form x[i] >= x[j] + gap.
struct SearchSpace {
    std::vector<std::pair<double, double>> bounds;
    struct OrderedPair {
        std::size_t upper_index;
        std::size_t lower_index;
        double min_gap;
    };
    std::vector<OrderedPair> constraints;

    bool feasible(const std::vector<double>& x) const {
        for (const auto& c : constraints)
            if (!(x[c.upper_index] >= x[c.lower_index] + c.min_gap)) return false;
        return true;
    }
};

struct OptimizerConfig {
    int restarts = 8;
    int max_evals = 2000;  // per restart
    double tolerance = 1e-6;
    std::uint64_t seed = 1;
};

struct Result {
    std::vector<double> point;
    double best_value = 0.0;
    long evals_used = 0;
    bool plateau = false;  // every feasible sample returned the same value
    std::vector<double> restart_trace;  // best-so-far after each restart
};

using Objective = std::function<double(const std::vector<double>&)>;

// Multi-start Nelder-Mead maximization over the box. Candidate points are
// clamped onto the box before evaluation; ordered-pair violations are
// rejected (treated as -infinity). Deterministic for a fixed seed; ties
// across restarts keep the earliest restart's point.
// Throws NoFeasiblePoint when no evaluated point satisfies the constraints.
Result maximize(const Objective& objective, const SearchSpace& space,
                const OptimizerConfig& config,
                const std::optional<std::vector<double>>& warm_start = std::nullopt);

}  // namespace satq::opt
