#ifndef SOO_PARTITION_TREE_HPP
#define SOO_PARTITION_TREE_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "soo/objective.hpp"
#include "soo/run_result.hpp"

namespace soo {

using CellId = std::int64_t;

/// A hyper-rectangle of the search box, represented by its center.
struct Cell
{
    CellId id = 0;
    CellId parent = -1;
    int depth = 0;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> center;
    /// Objective value at the center, in minimization sense, stored verbatim.
    double value = 0.0;
    std::size_t split_dim = 0;
    bool is_leaf = true;
};

/// floor((ln t)^(3/2)), clamped to at least 1.
int paper_max_depth(EvalCount t);

/// Cap on the depth a sweep may visit, as a function of evaluations used.
class DepthSchedule
{
public:
    enum class Kind { paper_log32, constant, unbounded };

    static constexpr int kUnbounded = std::numeric_limits<int>::max();

    static DepthSchedule paper() { return DepthSchedule(Kind::paper_log32, 0); }
    static DepthSchedule constant(int depth);
    static DepthSchedule unbounded() { return DepthSchedule(Kind::unbounded, 0); }

    int max_depth(EvalCount t) const;

    Kind kind() const { return kind_; }
    int constant_depth() const { return depth_; }

private:
    DepthSchedule(Kind kind, int depth) : kind_(kind), depth_(depth) {}

    Kind kind_;
    int depth_;
};

struct SooParams
{
    /// Children per split; must be odd and at least 3.
    int s_children = 3;
    DepthSchedule depth_schedule = DepthSchedule::paper();
    /// When false the objective is maximized by negating it on evaluation.
    bool minimize = true;

    void validate() const;
};

struct Incumbent
{
    std::vector<double> point;
    double value;
    CellId id;
};

struct SweepResult
{
    /// Split cell ids in split order.
    std::vector<CellId> split;
    /// The sweep stopped because the next split did not fit the budget.
    bool budget_exhausted = false;
};

/// Ordering key for a cell value: non-finite values compare as +inf.
inline double comparison_key(double v)
{
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

/// The SOO partition tree over a box.
///
/// The root cell is the whole box and is evaluated on construction. A split
/// cuts a leaf into S equal slabs along its split dimension; the middle
/// child keeps the parent's center and value, so each split costs S - 1
/// evaluations. Split dimensions cycle 0, 1, ..., D-1, 0, ... down the tree.
///
/// The tree owns no objective: it holds a reference, and the evaluation
/// limit caps how many evaluations this tree may take from it.
class PartitionTree
{
public:
    static constexpr EvalCount kNoLimit = std::numeric_limits<EvalCount>::max();

    PartitionTree(Objective& objective, SooParams params = {}, EvalCount eval_limit = kNoLimit);
    /// Partitions a sub-box of the objective's box.
    PartitionTree(Box box, Objective& objective, SooParams params = {},
                  EvalCount eval_limit = kNoLimit);

    PartitionTree(const PartitionTree&) = delete;
    PartitionTree& operator=(const PartitionTree&) = delete;
    PartitionTree(PartitionTree&&) = default;

    /// Splits a leaf into S children and returns their ids in slab order.
    /// All-or-nothing: throws NotALeaf or BudgetExhausted before evaluating.
    std::vector<CellId> split_leaf(CellId leaf);

    /// One pass over depths 0..min(deepest leaf depth, max depth), splitting
    /// the best leaf of each depth if it beats every cell split earlier in
    /// the pass.
    SweepResult sweep();

    Incumbent incumbent() const;

    /// True if the budget and the limit still cover one more split.
    bool can_split() const;

    const Cell& cell(CellId id) const { return cells_.at(static_cast<std::size_t>(id)); }
    const std::vector<Cell>& cells() const { return cells_; }
    std::vector<CellId> leaves_at(int depth) const;
    std::vector<CellId> leaves() const;
    /// Deepest depth holding a leaf.
    int deepest_leaf_depth() const;

    std::size_t dim() const { return dim_; }
    int s_children() const { return params_.s_children; }
    const SooParams& params() const { return params_; }
    const Box& box() const { return box_; }
    EvalCount eval_count() const { return eval_count_; }
    std::size_t split_count() const { return split_log_.size(); }
    const std::vector<CellId>& split_log() const { return split_log_; }
    /// One best-so-far entry per evaluation, minimization sense.
    const std::vector<TracePoint>& trace() const { return trace_; }

private:
    using LeafSet = std::set<std::pair<double, CellId>>;

    double evaluate(std::span<const double> x);
    void record(const Cell& c);
    void add_leaf(const Cell& c);

    Objective& objective_;
    Box box_;
    SooParams params_;
    std::size_t dim_;
    EvalCount eval_limit_;
    EvalCount eval_count_ = 0;

    std::vector<Cell> cells_;
    std::vector<LeafSet> leaves_by_depth_;
    std::vector<CellId> split_log_;
    std::vector<TracePoint> trace_;
    CellId incumbent_id_ = 0;
    double incumbent_key_ = std::numeric_limits<double>::infinity();
};

/// Runs SOO until the budget is spent or no leaf is splittable under the
/// depth schedule, then returns the best evaluated center.
///
/// Throws ObjectiveDegenerate if every evaluation was non-finite.
RunResult run_soo(Objective& objective, EvalCount budget, const SooParams& params = {});

} // namespace soo

#endif
