#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numeric>
#include <random>

#include "soo/bandit.hpp"
#include "soo/errors.hpp"

using namespace soo;

namespace {

double ucb_oracle(double mean, long long n, long long t, double c)
{
    using big = boost::multiprecision::cpp_bin_float_50;
    const big v = big(mean) + boost::multiprecision::sqrt(big(c) * boost::multiprecision::log(big(t)) / big(n));
    return static_cast<double>(v);
}

} // namespace

TEST_CASE("two-arm worked example favors the less explored arm")
{
    const ArmStats stats = ArmStats::from_summary({5, 10}, {0.3, 0.4});
    CHECK(stats.t() == 15);
    const double u0 = ucb_index(stats, 0);
    const double u1 = ucb_index(stats, 1);
    CHECK(std::abs(u0 - ucb_oracle(0.3, 5, 15, 2.0)) <= 1e-12);
    CHECK(std::abs(u1 - ucb_oracle(0.4, 10, 15, 2.0)) <= 1e-12);
    CHECK(u0 == doctest::Approx(1.3407785933813608));
    CHECK(u1 == doctest::Approx(1.1359416010937567));
    CHECK(ucb_select(stats) == 0);
    // a small enough constant turns the choice to exploitation
    CHECK(ucb_select(stats, 0.01) == 1);
}

TEST_CASE("ucb ties and degenerate cases")
{
    CHECK(ucb_select(ArmStats::from_summary({4, 4}, {0.5, 0.5})) == 0);
    CHECK(ucb_select(ArmStats::from_summary({3}, {0.1})) == 0);
    CHECK_THROWS_AS(ucb_select(ArmStats::from_summary({3, 0}, {0.1, 0.0})), UnpulledArm);
    CHECK_THROWS_AS(ArmStats(0), InvalidParams);
}

TEST_CASE("argmax is invariant under a common shift of the means")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> mean(0.0, 1.0);
    std::uniform_int_distribution<long long> pulls(1, 50);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::int64_t> n(4);
        std::vector<double> m(4);
        std::vector<double> shifted(4);
        // dyadic offset keeps mean + 0.5 exact
        for (std::size_t k = 0; k < 4; ++k) {
            n[k] = pulls(rng);
            m[k] = std::ldexp(std::floor(std::ldexp(mean(rng), 20)), -20);
            shifted[k] = m[k] + 0.5;
        }
        CHECK(ucb_select(ArmStats::from_summary(n, m)) ==
              ucb_select(ArmStats::from_summary(n, shifted)));
    }
}

TEST_CASE("arm stats keep exact running averages")
{
    ArmStats s(3);
    const std::vector<std::pair<std::size_t, double>> obs = {{0, 1.0}, {2, 0.25}, {0, 0.0},
                                                             {1, 0.5}, {0, 0.5}, {2, 0.75}};
    for (auto [arm, r] : obs)
        s.record(arm, r);
    CHECK(s.t() == 6);
    CHECK(std::accumulate(s.pulls().begin(), s.pulls().end(), std::int64_t{0}) == s.t());
    CHECK(s.means()[0] == 0.5);
    CHECK(s.means()[1] == 0.5);
    CHECK(s.means()[2] == 0.5);
    CHECK_THROWS_AS(s.record(3, 1.0), InvalidParams);
}

TEST_CASE("run_ucb basics")
{
    const BanditRun run = run_ucb({bernoulli_arm(0.9), bernoulli_arm(0.1)}, 1000, 7);
    CHECK(run.history.size() == 1000);
    CHECK(run.stats.t() == 1000);
    CHECK(run.history[0].arm == 0);
    CHECK(run.history[1].arm == 1);
    CHECK(run.stats.pulls()[1] < 100);
    CHECK(run.recommendation == 0);

    const BanditRun again = run_ucb({bernoulli_arm(0.9), bernoulli_arm(0.1)}, 1000, 7);
    for (std::size_t i = 0; i < run.history.size(); ++i) {
        CHECK(run.history[i].arm == again.history[i].arm);
        CHECK(run.history[i].reward == again.history[i].reward);
    }

    const BanditRun single = run_ucb({bernoulli_arm(0.5)}, 50, 1);
    CHECK(single.stats.pulls()[0] == 50);

    const BanditRun fixed = run_ucb({constant_arm(0.2), constant_arm(0.8)}, 100, 3);
    CHECK(fixed.recommendation == 1);

    CHECK_THROWS_AS(run_ucb({constant_arm(0.2), constant_arm(0.8)}, 1, 3), InvalidParams);
}

TEST_CASE("pull counts sum to t after every round")
{
    std::vector<RewardSource> arms = {bernoulli_arm(0.3), bernoulli_arm(0.5), bernoulli_arm(0.55)};
    for (std::int64_t horizon : {3, 10, 257}) {
        const BanditRun run = run_ucb(arms, horizon, 42);
        ArmStats replay(arms.size());
        for (const Pull& p : run.history) {
            replay.record(p.arm, p.reward);
            CHECK(std::accumulate(replay.pulls().begin(), replay.pulls().end(), std::int64_t{0}) ==
                  replay.t());
        }
        CHECK(replay.means() == run.stats.means());
    }
}
