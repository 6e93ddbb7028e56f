#ifndef SOO_REFINE_HPP
#define SOO_REFINE_HPP

#include <functional>
#include <span>
#include <vector>

#include "soo/objective.hpp"
#include "soo/run_result.hpp"

namespace soo {

struct NmParams
{
    double alpha = 1.0;      // reflection
    double gamma = 2.0;      // expansion
    double rho = 0.5;        // contraction
    double sigma = 0.5;      // shrink
    double init_scale = 0.05; // initial step, fraction of the box width
    double tol = 1e-12;      // stop when max - min simplex value <= tol

    void validate() const;
};

struct LocalResult
{
    std::vector<double> point;
    double value;
    EvalCount evals_used = 0;
    /// Raw objective value of every evaluation, in order.
    std::vector<double> values;
    /// The objective ran out of budget before max_evals was reached.
    bool budget_exhausted = false;
    /// The degenerate-simplex restart was used.
    bool restarted = false;
};

/// Box-constrained Nelder-Mead minimization started at x0.
///
/// Candidates are clamped to the box before evaluation. If the simplex
/// volume collapses below 1e-30 of its initial volume, it is rebuilt once
/// around the best vertex with a tenth of the initial step. The returned
/// point is the best evaluated one, so its value never exceeds f(x0).
LocalResult nelder_mead(Objective& objective, std::span<const double> x0, EvalCount max_evals,
                        const NmParams& params = {});

/// Signature of a local optimizer usable by refine_run.
using LocalRefiner =
    std::function<LocalResult(Objective&, std::span<const double>, EvalCount max_evals)>;

/// Evaluations reserved for refinement: floor(fraction * budget).
EvalCount refine_reserve(EvalCount budget, double fraction);

/// Locally refines the incumbent of a finished SOO run using the reserved
/// share of the objective's budget, and merges both phases.
///
/// The merged trace continues the SOO trace; the merged best is the minimum
/// of both phases, ties keeping the SOO point. If the reserve cannot hold
/// an initial simplex, the SOO result is returned unchanged.
RunResult refine_run(const RunResult& soo_result, Objective& objective, double fraction,
                     const NmParams& params = {});
RunResult refine_run(const RunResult& soo_result, Objective& objective, double fraction,
                     const LocalRefiner& refiner);

} // namespace soo

#endif
