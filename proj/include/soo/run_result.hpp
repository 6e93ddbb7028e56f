#ifndef SOO_RUN_RESULT_HPP
#define SOO_RUN_RESULT_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "soo/objective.hpp"

namespace soo {

/// Best-so-far value after the eval_index-th evaluation (1-based).
struct TracePoint
{
    EvalCount eval_index;
    double best_value;

    bool operator==(const TracePoint&) const = default;
};

struct RunResult
{
    std::vector<double> best_point;
    double best_value = std::numeric_limits<double>::infinity();
    EvalCount evals_used = 0;
    std::vector<TracePoint> trace;
    /// best_value / f*, NaN when the optimum is unknown.
    double ratio = std::numeric_limits<double>::quiet_NaN();
    /// Ids of split cells in split order (SOO runs only).
    std::vector<std::int64_t> splits;
    /// The run ended because the objective ran out of budget mid-phase.
    bool budget_exhausted = false;
};

/// Fills ratio from the objective's known optimum, if any.
inline void attach_ratio(RunResult& result, const Objective& objective)
{
    if (objective.optimum())
        result.ratio = result.best_value / objective.optimum()->value;
}

} // namespace soo

#endif
