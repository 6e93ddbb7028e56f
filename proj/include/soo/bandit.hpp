#ifndef SOO_BANDIT_HPP
#define SOO_BANDIT_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace soo {

/// Per-arm pull counts and empirical means.
class ArmStats
{
public:
    explicit ArmStats(std::size_t arms);

    /// Records one pull of `arm` that returned `reward`.
    void record(std::size_t arm, double reward);

    std::size_t arms() const { return pulls_.size(); }
    std::int64_t t() const { return t_; }
    const std::vector<std::int64_t>& pulls() const { return pulls_; }
    const std::vector<double>& means() const { return means_; }

    /// Builds stats directly from counts and means (t = sum of counts).
    static ArmStats from_summary(std::vector<std::int64_t> pulls, std::vector<double> means);

private:
    std::vector<std::int64_t> pulls_;
    std::vector<double> sums_;
    std::vector<double> means_;
    std::int64_t t_ = 0;
};

/// mean_k + sqrt(c ln t / n_k). Throws UnpulledArm if n_k = 0.
double ucb_index(const ArmStats& stats, std::size_t arm, double c = 2.0);

/// Arm with the largest UCB index, ties to the smallest index.
/// Throws UnpulledArm if any arm has never been pulled.
std::size_t ucb_select(const ArmStats& stats, double c = 2.0);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
inline double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

using RewardSource = std::function<double(std::mt19937_64&)>;

RewardSource bernoulli_arm(double p);
RewardSource constant_arm(double value);

struct Pull
{
    std::size_t arm;
    double reward;
};

struct BanditRun
{
    std::vector<Pull> history;
    ArmStats stats;
    /// Arm with the highest empirical mean at the horizon, ties to the smallest index.
    std::size_t recommendation;
};

/// Pulls every arm once in index order, then follows ucb_select until the
/// horizon. All randomness comes from one mt19937_64 seeded with `seed`.
BanditRun run_ucb(const std::vector<RewardSource>& arms, std::int64_t horizon, std::uint64_t seed,
                  double c = 2.0);

} // namespace soo

#endif
