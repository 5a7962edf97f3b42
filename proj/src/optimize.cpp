#include "satq/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "satq/errors.hpp"
#include "satq/rng.hpp"

namespace satq::opt {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Tracker {
    std::vector<double> best_point;
    double best_value = kNegInf;
    std::vector<double> last_feasible;
    long evals = 0;
    double feasible_min = std::numeric_limits<double>::infinity();
    double feasible_max = -std::numeric_limits<double>::infinity();
    bool any_feasible = false;
};

std::vector<double> clamp_to_box(std::vector<double> x, const SearchSpace& space) {
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = std::clamp(x[i], space.bounds[i].first, space.bounds[i].second);
    return x;
}

double evaluate(const Objective& objective, const SearchSpace& space, std::vector<double>& x,
                Tracker& tracker) {
    x = clamp_to_box(std::move(x), space);
    ++tracker.evals;
    if (!space.feasible(x)) return kNegInf;
    const double value = objective(x);
    if (std::isnan(value)) return kNegInf;
    tracker.any_feasible = true;
    tracker.last_feasible = x;
    tracker.feasible_min = std::min(tracker.feasible_min, value);
    tracker.feasible_max = std::max(tracker.feasible_max, value);
    if (value > tracker.best_value) {
        tracker.best_value = value;
        tracker.best_point = x;
    }
    return value;
}

// One Nelder-Mead descent from a start point; shares the global tracker.
void nelder_mead(const Objective& objective, const SearchSpace& space,
                 const std::vector<double>& start, int max_evals, double tolerance,
                 Tracker& tracker) {
    const std::size_t n = space.bounds.size();
    struct Vertex {
        std::vector<double> x;
        double f;
    };
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);

    std::vector<double> x0 = clamp_to_box(start, space);
    long budget = max_evals;
    auto eval = [&](std::vector<double> x) {
        --budget;
        return evaluate(objective, space, x, tracker);
    };

    {
        auto x = x0;
        simplex.push_back({x, eval(x)});
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto x = x0;
        const double span = space.bounds[i].second - space.bounds[i].first;
        double step = 0.1 * span;
        if (x[i] + step > space.bounds[i].second) step = -step;
        x[i] += step;
        simplex.push_back({x, eval(x)});
    }

    const auto worse = [](const Vertex& a, const Vertex& b) { return a.f > b.f; };
    while (budget > 0) {
        std::sort(simplex.begin(), simplex.end(), worse);  // best first
        const double fbest = simplex.front().f;
        const double fworst = simplex.back().f;
        if (std::isfinite(fbest) && std::isfinite(fworst) &&
            std::fabs(fbest - fworst) <= tolerance * (std::fabs(fbest) + 1e-30))
            break;

        // centroid of all but the worst
        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / n;

        auto blend = [&](double coeff) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i)
                x[i] = centroid[i] + coeff * (centroid[i] - simplex.back().x[i]);
            return x;
        };

        auto reflected = blend(1.0);
        const double fr = eval(reflected);
        if (fr > fbest) {
            auto expanded = blend(2.0);
            const double fe = eval(expanded);
            if (fe > fr)
                simplex.back() = {expanded, fe};
            else
                simplex.back() = {reflected, fr};
        } else if (fr > simplex[n - 1].f) {
            simplex.back() = {reflected, fr};
        } else {
            auto contracted = blend(-0.5);
            const double fc = eval(contracted);
            if (fc > simplex.back().f) {
                simplex.back() = {contracted, fc};
            } else {
                // shrink toward the best vertex
                for (std::size_t v = 1; v <= n; ++v) {
                    for (std::size_t i = 0; i < n; ++i)
                        simplex[v].x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
                    simplex[v].f = eval(simplex[v].x);
                }
            }
        }
        if (budget <= 0) break;
    }
}
}  // namespace

Result maximize(const Objective& objective, const SearchSpace& space,
                const OptimizerConfig& config,
                const std::optional<std::vector<double>>& warm_start) {
    if (space.bounds.empty()) throw ConfigError("optimizer requires at least one dimension");
    for (const auto& [lo, hi] : space.bounds)
        if (!(lo < hi)) throw ConfigError("optimizer bounds require lower < upper");
    if (config.restarts < 1 || config.max_evals < 10)
        throw ConfigError("optimizer requires restarts >= 1 and max_evals >= 10");

    const std::size_t n = space.bounds.size();
    Tracker tracker;
    Result result;
    result.restart_trace.reserve(config.restarts);

    for (int restart = 0; restart < config.restarts; ++restart) {
        std::vector<double> start(n);
        if (restart == 0 && warm_start) {
            start = *warm_start;
        } else if (restart == 0) {
            for (std::size_t i = 0; i < n; ++i)
                start[i] = 0.5 * (space.bounds[i].first + space.bounds[i].second);
        } else {
            Rng rng(derive_stream(config.seed, "optimizer-restart", restart));
            for (std::size_t i = 0; i < n; ++i)
                start[i] = rng.uniform(space.bounds[i].first, space.bounds[i].second);
        }
        nelder_mead(objective, space, start, config.max_evals, config.tolerance, tracker);
        result.restart_trace.push_back(tracker.best_value);
    }

    if (!tracker.any_feasible)
        throw NoFeasiblePoint("optimizer found no point satisfying the constraints");

    result.plateau = tracker.feasible_max == tracker.feasible_min;
    result.point = result.plateau ? tracker.last_feasible : tracker.best_point;
    result.best_value = tracker.best_value;
    result.evals_used = tracker.evals;
    return result;
}

}  // namespace satq::opt
