#include "soo/bandit.hpp"

#include <cmath>
#include <string>

#include "soo/errors.hpp"

namespace soo {

ArmStats::ArmStats(std::size_t arms) : pulls_(arms, 0), sums_(arms, 0.0), means_(arms, 0.0)
{
    if (arms == 0)
        throw InvalidParams("a bandit needs at least one arm");
}

void ArmStats::record(std::size_t arm, double reward)
{
    if (arm >= pulls_.size())
        throw InvalidParams("arm index " + std::to_string(arm) + " out of range");
    ++pulls_[arm];
    sums_[arm] += reward;
    means_[arm] = sums_[arm] / static_cast<double>(pulls_[arm]);
    ++t_;
}

ArmStats ArmStats::from_summary(std::vector<std::int64_t> pulls, std::vector<double> means)
{
    if (pulls.size() != means.size())
        throw InvalidParams("pulls and means must have the same length");
    ArmStats s(pulls.size());
    for (std::size_t k = 0; k < pulls.size(); ++k) {
        if (pulls[k] < 0)
            throw InvalidParams("pull counts must be non-negative");
        s.pulls_[k] = pulls[k];
        s.means_[k] = means[k];
        s.sums_[k] = means[k] * static_cast<double>(pulls[k]);
        s.t_ += pulls[k];
    }
    return s;
}

double ucb_index(const ArmStats& stats, std::size_t arm, double c)
{
    const std::int64_t n = stats.pulls().at(arm);
    if (n == 0)
        throw UnpulledArm("arm " + std::to_string(arm) + " has never been pulled");
    return stats.means()[arm] +
           std::sqrt(c * std::log(static_cast<double>(stats.t())) / static_cast<double>(n));
}

std::size_t ucb_select(const ArmStats& stats, double c)
{
    std::size_t best = 0;
    double best_index = ucb_index(stats, 0, c);
    for (std::size_t k = 1; k < stats.arms(); ++k) {
        const double u = ucb_index(stats, k, c);
        if (u > best_index) {
            best_index = u;
            best = k;
        }
    }
    return best;
}

RewardSource bernoulli_arm(double p)
{
    return [p](std::mt19937_64& rng) { return uniform01(rng) < p ? 1.0 : 0.0; };
}

RewardSource constant_arm(double value)
{
    return [value](std::mt19937_64&) { return value; };
}

BanditRun run_ucb(const std::vector<RewardSource>& arms, std::int64_t horizon, std::uint64_t seed,
                  double c)
{
    const auto k = static_cast<std::int64_t>(arms.size());
    if (horizon < k)
        throw InvalidParams("horizon must allow one pull per arm");

    std::mt19937_64 rng(seed);
    BanditRun run{{}, ArmStats(arms.size()), 0};
    run.history.reserve(static_cast<std::size_t>(horizon));

    auto pull = [&](std::size_t arm) {
        const double r = arms[arm](rng);
        run.stats.record(arm, r);
        run.history.push_back({arm, r});
    };
    for (std::size_t a = 0; a < arms.size(); ++a)
        pull(a);
    for (std::int64_t t = k; t < horizon; ++t)
        pull(ucb_select(run.stats, c));

    const auto& means = run.stats.means();
    for (std::size_t a = 1; a < means.size(); ++a)
        if (means[a] > means[run.recommendation])
            run.recommendation = a;
    return run;
}

} // namespace soo
