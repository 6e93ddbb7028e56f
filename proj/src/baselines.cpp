#include "soo/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "soo/bandit.hpp"
#include "soo/errors.hpp"
#include "soo/partition_tree.hpp"

namespace soo {

namespace {

// Incumbent plus one trace entry per evaluation.
class Tracker
{
public:
    explicit Tracker(RunResult& r) : r_(r) {}

    void observe(const std::vector<double>& x, double f)
    {
        ++r_.evals_used;
        if (r_.best_point.empty() || comparison_key(f) < comparison_key(r_.best_value)) {
            r_.best_point = x;
            r_.best_value = f;
        }
        r_.trace.push_back({r_.evals_used, comparison_key(r_.best_value)});
    }

private:
    RunResult& r_;
};

void check_budget(EvalCount budget)
{
    if (budget < 1)
        throw InvalidParams("budget must be at least 1");
}

} // namespace

RunResult run_random_search(Objective& objective, EvalCount budget, std::uint64_t seed)
{
    check_budget(budget);
    const Box& box = objective.box();
    std::mt19937_64 rng(seed);
    RunResult result;
    Tracker tracker(result);
    std::vector<double> x(box.dim());
    for (EvalCount i = 0; i < budget; ++i) {
        for (std::size_t j = 0; j < x.size(); ++j)
            x[j] = box.lower[j] + uniform01(rng) * (box.upper[j] - box.lower[j]);
        tracker.observe(x, objective.evaluate(x));
    }
    attach_ratio(result, objective);
    return result;
}

std::int64_t default_grid_arms(std::size_t dim)
{
    std::int64_t k = 1;
    for (std::size_t j = 0; j < std::min<std::size_t>(dim, 6); ++j)
        k *= 3;
    return k;
}

std::vector<std::int64_t> grid_shape(std::size_t dim, std::int64_t arms)
{
    if (arms < 1)
        throw InvalidParams("grid needs at least one arm");
    std::vector<std::int64_t> shape(dim, 1);
    std::int64_t product = 1;
    for (std::size_t j = 0;; j = (j + 1) % dim) {
        const std::int64_t next = product / shape[j] * (shape[j] + 1);
        if (next > arms)
            break;
        product = next;
        ++shape[j];
    }
    return shape;
}

RunResult run_ucb_grid(Objective& objective, EvalCount budget, std::int64_t arms,
                       std::uint64_t seed, double c)
{
    check_budget(budget);
    const Box& box = objective.box();
    const std::size_t dim = box.dim();
    const std::vector<std::int64_t> shape = grid_shape(dim, arms);
    std::int64_t cells = 1;
    for (auto s : shape)
        cells *= s;

    std::mt19937_64 rng(seed);
    ArmStats stats(static_cast<std::size_t>(cells));
    RunResult result;
    Tracker tracker(result);
    double lowest = std::numeric_limits<double>::infinity();
    double highest = -std::numeric_limits<double>::infinity();

    std::vector<double> x(dim);
    auto pull = [&](std::int64_t arm) {
        std::int64_t rest = arm;
        for (std::size_t j = 0; j < dim; ++j) {
            const std::int64_t slot = rest % shape[j];
            rest /= shape[j];
            const double width = (box.upper[j] - box.lower[j]) / static_cast<double>(shape[j]);
            const double lo = box.lower[j] + static_cast<double>(slot) * width;
            x[j] = std::clamp(lo + uniform01(rng) * width, box.lower[j], box.upper[j]);
        }
        const double f = objective.evaluate(x);
        tracker.observe(x, f);
        const double reward = -comparison_key(f);
        if (std::isfinite(reward)) {
            lowest = std::min(lowest, reward);
            highest = std::max(highest, reward);
        }
        // A non-finite value counts as the worst reward seen so far.
        stats.record(static_cast<std::size_t>(arm),
                     std::isfinite(reward) ? reward : (std::isfinite(lowest) ? lowest : 0.0));
    };

    const EvalCount warmup = std::min<EvalCount>(budget, cells);
    for (EvalCount a = 0; a < warmup; ++a)
        pull(a);
    for (EvalCount t = warmup; t < budget; ++t) {
        const double range = highest > lowest ? highest - lowest : 0.0;
        pull(static_cast<std::int64_t>(ucb_select(stats, c * range * range)));
    }
    attach_ratio(result, objective);
    return result;
}

} // namespace soo
