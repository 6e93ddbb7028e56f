// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "soo/bandit.hpp"
#include "soo/baselines.hpp"
#include "soo/errors.hpp"
#include "soo/harness.hpp"
#include "soo/objective.hpp"
#include "soo/partition_tree.hpp"
#include "soo/refine.hpp"
#include "test_support.hpp"

using namespace soo;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

struct Outcome
{
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <class T>
T median(std::vector<T> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

double soo_gap(const std::string& name, std::size_t dim, EvalCount budget)
{
    Objective f = make_objective(name, dim, kDefaultShiftSeed, budget);
    return run_soo(f, budget).best_value - known_optimum(f).value;
}

Outcome rank_invariance()
{
    const std::vector<std::pair<std::string, std::function<double(double)>>> transforms = {
        {"exp", [](double v) { return std::exp(v); }},
        {"2f+7", [](double v) { return 2.0 * v + 7.0; }},
    };
    for (const char* name : {"sphere", "rastrigin"}) {
        Objective base = make_objective(name, 2, kDefaultShiftSeed, 1000);
        const RunResult ref = run_soo(base, 1000);
        for (const auto& [label, g] : transforms) {
            Objective t = base.transformed(g);
            const RunResult r = run_soo(t, 1000);
            if (r.splits != ref.splits)
                return {false, std::string(name) + " under " + label + ": split ids differ"};
            if (r.best_point != ref.best_point)
                return {false, std::string(name) + " under " + label + ": best points differ"};
        }
    }
    return {true, "sphere and rastrigin, exp and 2f+7, budget 1000"};
}

Outcome determinism_and_prefix()
{
    const auto start = Clock::now();
    RunConfig rc;
    rc.function = "rastrigin";
    rc.dim = 2;
    rc.budget = BudgetMode::fixed(1000);
    const ExperimentResult a = run_experiment(rc);
    const ExperimentResult b = run_experiment(rc);
    if (trace_csv(a.run, a.f_star) != trace_csv(b.run, b.f_star))
        return {false, "trace CSVs differ"};
    auto ja = result_json(rc, a);
    auto jb = result_json(rc, b);
    ja.erase("wall_clock_seconds");
    jb.erase("wall_clock_seconds");
    if (ja.dump() != jb.dump())
        return {false, "result JSONs differ"};

    rc.budget = BudgetMode::fixed(10'000);
    const ExperimentResult longer = run_experiment(rc);
    const std::string short_csv = trace_csv(a.run, a.f_star);
    const std::string long_csv = trace_csv(longer.run, longer.f_star);
    if (long_csv.compare(0, short_csv.size(), short_csv) != 0)
        return {false, "budget 1000 trace is not a prefix of budget 10000 trace"};
    const double s = seconds_since(start);
    if (s >= 5.0)
        return {false, "took " + std::to_string(s) + " s"};
    return {true, "identical reruns, prefix holds, " + std::to_string(s) + " s"};
}

Outcome partition_accounting()
{
    Objective f = make_objective("ackley", 3, kDefaultShiftSeed, 10'000);
    const double box_volume = f.box().volume();
    PartitionTree tree(f);
    int sweeps = 0;
    while (tree.can_split()) {
        const SweepResult s = tree.sweep();
        ++sweeps;
        const double vol = soo::test::leaf_volume(tree);
        if (std::abs(vol - box_volume) > 1e-12 * box_volume)
            return {false, "leaf volume off after sweep " + std::to_string(sweeps)};
        if (tree.eval_count() != 1 + 2 * static_cast<EvalCount>(tree.split_count()))
            return {false, "eval_count != 1 + 2 splits after sweep " + std::to_string(sweeps)};
        if (s.budget_exhausted || s.split.empty())
            break;
    }
    return {true, std::to_string(sweeps) + " sweeps, " + std::to_string(tree.eval_count()) +
                      " evaluations"};
}

Outcome consistency()
{
    const auto start = Clock::now();
    double sphere_gap = 0.0;
    for (const auto& name : suite_functions()) {
        const double g2 = soo_gap(name, 2, 100);
        const double g3 = soo_gap(name, 2, 1000);
        const double g4 = soo_gap(name, 2, 10'000);
        if (!(g3 <= g2 && g4 <= g3))
            return {false, name + " gap increases with budget"};
        if (name == "sphere")
            sphere_gap = g4;
    }
    if (sphere_gap > 1e-4)
        return {false, "sphere gap " + format_double(sphere_gap)};
    const double s = seconds_since(start);
    if (s >= 30.0)
        return {false, "took " + std::to_string(s) + " s"};
    return {true, "sphere gap " + format_double(sphere_gap) + ", " + std::to_string(s) + " s"};
}

Outcome hybrid_improvement()
{
    const auto start = Clock::now();
    const EvalCount budget = BudgetMode::cec().resolve(10);
    int improved = 0;
    for (const auto& name : suite_functions()) {
        RunConfig rc;
        rc.function = name;
        rc.dim = 10;
        rc.budget = BudgetMode::fixed(budget);
        const ExperimentResult plain = run_experiment(rc);
        rc.algorithm = Algorithm::soo_refine;
        const ExperimentResult hybrid = run_experiment(rc);
        const double gap = hybrid.run.best_value - hybrid.f_star;
        if ((name == "sphere" || name == "ellipsoid") && gap > 1e-3)
            return {false, name + " hybrid gap " + format_double(gap)};
        if (hybrid.run.best_value < plain.run.best_value)
            ++improved;
    }
    const double s = seconds_since(start);
    if (improved < 6)
        return {false, "hybrid improves on " + std::to_string(improved) + " of 8"};
    if (s >= 300.0)
        return {false, "took " + std::to_string(s) + " s"};
    return {true, "hybrid improves on " + std::to_string(improved) + " of 8, " +
                      std::to_string(s) + " s"};
}

Outcome ucb_worked_example()
{
    const ArmStats stats = ArmStats::from_summary({5, 10}, {0.3, 0.4});
    const std::vector<double> means{0.3, 0.4};
    const std::vector<int> pulls{5, 10};
    for (std::size_t k = 0; k < 2; ++k) {
        const big oracle = big(means[k]) + boost::multiprecision::sqrt(
                                               big(2) * boost::multiprecision::log(big(15)) /
                                               big(pulls[k]));
        const double err = std::abs(ucb_index(stats, k) - static_cast<double>(oracle));
        if (err > 1e-12)
            return {false, "arm " + std::to_string(k + 1) + " index off by " + format_double(err)};
    }
    if (ucb_select(stats) != 0)
        return {false, "selected arm " + std::to_string(ucb_select(stats) + 1)};
    return {true, "arm 1 selected, indices " + format_double(ucb_index(stats, 0)) + " and " +
                      format_double(ucb_index(stats, 1))};
}

Outcome ucb_log_growth()
{
    const auto start = Clock::now();
    auto suboptimal = [](std::int64_t horizon) {
        std::vector<std::int64_t> pulls;
        for (std::uint64_t seed = 1; seed <= 20; ++seed)
            pulls.push_back(
                run_ucb({bernoulli_arm(0.9), bernoulli_arm(0.1)}, horizon, seed).stats.pulls()[1]);
        return median(pulls);
    };
    const std::int64_t small = suboptimal(100);
    const std::int64_t large = suboptimal(10'000);
    const double s = seconds_since(start);
    const std::string detail = "median suboptimal pulls " + std::to_string(small) + " at 1e2, " +
                               std::to_string(large) + " at 1e4";
    if (!(large < 3 * small + 50))
        return {false, detail};
    if (s >= 10.0)
        return {false, "took " + std::to_string(s) + " s"};
    return {true, detail};
}

Outcome baseline_dominance()
{
    int wins = 0;
    for (const auto& name : suite_functions()) {
        const double soo = soo_gap(name, 2, 10'000);
        std::vector<double> random_gaps;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            Objective f = make_objective(name, 2, kDefaultShiftSeed, 10'000);
            random_gaps.push_back(run_random_search(f, 10'000, seed).best_value -
                                  known_optimum(f).value);
        }
        if (soo <= median(random_gaps))
            ++wins;
    }
    if (wins < 7)
        return {false, "SOO wins on " + std::to_string(wins) + " of 8"};
    return {true, "SOO wins on " + std::to_string(wins) + " of 8"};
}

Outcome budget_fuzz()
{
    std::mt19937_64 rng(20'141'016);
    const auto& names = suite_functions();
    const Algorithm algos[] = {Algorithm::soo, Algorithm::soo_refine, Algorithm::random,
                               Algorithm::ucb_grid};
    std::uniform_int_distribution<std::size_t> pick_fn(0, names.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_dim(1, 10);
    std::uniform_int_distribution<EvalCount> pick_budget(1, 500);
    std::uniform_int_distribution<int> pick_algo(0, 3);
    int runs = 0;
    for (int i = 0; i < 1000; ++i) {
        RunConfig rc;
        rc.function = names[pick_fn(rng)];
        rc.dim = pick_dim(rng);
        if (rc.function == "rosenbrock" && rc.dim == 1)
            rc.dim = 2;
        const EvalCount budget = pick_budget(rng);
        rc.budget = BudgetMode::fixed(budget);
        rc.algorithm = algos[pick_algo(rng)];
        rc.seed = rng();
        const std::string label = run_basename(rc);
        ExperimentResult r;
        try {
            r = run_experiment(rc);
        } catch (const std::exception& e) {
            return {false, label + " threw: " + e.what()};
        }
        if (r.run.evals_used > budget)
            return {false, label + " used " + std::to_string(r.run.evals_used)};
        if (!r.run.trace.empty() && r.run.trace.back().eval_index > budget)
            return {false, label + " traced past its budget"};
        if (!soo::test::trace_monotone(r.run.trace))
            return {false, label + " trace not monotone"};
        ++runs;
    }
    return {true, std::to_string(runs) + " randomized runs within budget"};
}

Outcome depth_schedule()
{
    auto oracle = [](double t) {
        const big l = boost::multiprecision::log(big(t));
        return static_cast<int>(boost::multiprecision::floor(l * boost::multiprecision::sqrt(l)));
    };
    const int d1 = paper_max_depth(1);
    const int d5 = paper_max_depth(100'000);
    const int d6 = paper_max_depth(1'000'000);
    const std::string detail = std::to_string(d1) + ", " + std::to_string(d5) + ", " +
                               std::to_string(d6) + " (oracle " + std::to_string(oracle(1e6)) + ")";
    if (d1 != 1 || d5 != 39 || oracle(1e5) != 39 || d6 != oracle(1e6))
        return {false, detail};
    return {true, detail};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
        {"1 rank invariance", rank_invariance},
        {"2 determinism and trace prefix", determinism_and_prefix},
        {"3 partition and accounting invariants", partition_accounting},
        {"4 consistency on the 2-D suite", consistency},
        {"5 hybrid improvement at D=10", hybrid_improvement},
        {"6 UCB worked example", ucb_worked_example},
        {"7 UCB logarithmic growth", ucb_log_growth},
        {"8 dominance over random search", baseline_dominance},
        {"9 budget safety fuzz", budget_fuzz},
        {"10 depth schedule values", depth_schedule},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass)
            ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
