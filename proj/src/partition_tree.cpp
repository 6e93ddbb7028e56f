#include "soo/partition_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "soo/errors.hpp"

namespace soo {

int paper_max_depth(EvalCount t)
{
    if (t <= 1)
        return 1;
    const double h = std::floor(std::pow(std::log(static_cast<double>(t)), 1.5));
    return std::max(1, static_cast<int>(h));
}

DepthSchedule DepthSchedule::constant(int depth)
{
    if (depth < 0)
        throw InvalidParams("constant depth must be non-negative");
    return DepthSchedule(Kind::constant, depth);
}

int DepthSchedule::max_depth(EvalCount t) const
{
    switch (kind_) {
    case Kind::paper_log32:
        return paper_max_depth(t);
    case Kind::constant:
        return depth_;
    case Kind::unbounded:
        break;
    }
    return kUnbounded;
}

void SooParams::validate() const
{
    if (s_children < 3 || s_children % 2 == 0)
        throw InvalidParams("s_children must be odd and >= 3, got " + std::to_string(s_children));
}

PartitionTree::PartitionTree(Objective& objective, SooParams params, EvalCount eval_limit)
    : PartitionTree(objective.box(), objective, params, eval_limit)
{
}

PartitionTree::PartitionTree(Box box, Objective& objective, SooParams params, EvalCount eval_limit)
    : objective_(objective), box_(std::move(box)), params_(params), dim_(box_.dim()),
      eval_limit_(eval_limit)
{
    params_.validate();
    box_.validate();
    if (box_.dim() != objective_.dim())
        throw InvalidBounds("tree box dimension does not match the objective");
    const Box& outer = objective_.box();
    for (std::size_t j = 0; j < dim_; ++j)
        if (box_.lower[j] < outer.lower[j] || box_.upper[j] > outer.upper[j])
            throw InvalidBounds("tree box must lie inside the objective's box");
    if (eval_limit_ < 1 || objective_.remaining() < 1)
        throw BudgetExhausted("no evaluation left for the root cell");

    Cell root;
    root.lower = box_.lower;
    root.upper = box_.upper;
    root.center.resize(dim_);
    for (std::size_t j = 0; j < dim_; ++j)
        root.center[j] = std::midpoint(root.lower[j], root.upper[j]);
    root.value = evaluate(root.center);
    cells_.push_back(std::move(root));
    record(cells_.back());
    add_leaf(cells_.back());
}

double PartitionTree::evaluate(std::span<const double> x)
{
    const double v = objective_.evaluate(x);
    return params_.minimize ? v : -v;
}

void PartitionTree::record(const Cell& c)
{
    ++eval_count_;
    const double key = comparison_key(c.value);
    if (key < incumbent_key_) {
        incumbent_key_ = key;
        incumbent_id_ = c.id;
    }
    trace_.push_back({eval_count_, incumbent_key_});
}

void PartitionTree::add_leaf(const Cell& c)
{
    const auto depth = static_cast<std::size_t>(c.depth);
    if (leaves_by_depth_.size() <= depth)
        leaves_by_depth_.resize(depth + 1);
    leaves_by_depth_[depth].emplace(comparison_key(c.value), c.id);
}

bool PartitionTree::can_split() const
{
    const EvalCount need = params_.s_children - 1;
    return objective_.remaining() >= need && eval_limit_ - eval_count_ >= need;
}

std::vector<CellId> PartitionTree::split_leaf(CellId leaf)
{
    if (leaf < 0 || static_cast<std::size_t>(leaf) >= cells_.size())
        throw NotALeaf("no cell with id " + std::to_string(leaf));
    if (!cells_[static_cast<std::size_t>(leaf)].is_leaf)
        throw NotALeaf("cell " + std::to_string(leaf) + " has already been split");
    if (!can_split())
        throw BudgetExhausted("not enough budget left to split cell " + std::to_string(leaf));

    const int s = params_.s_children;
    const int middle = s / 2;
    // Copy: cells_ may reallocate below.
    const Cell parent = cells_[static_cast<std::size_t>(leaf)];
    const std::size_t j = parent.split_dim;
    const double lo = parent.lower[j];
    const double hi = parent.upper[j];
    const double width = hi - lo;

    std::vector<double> cuts(static_cast<std::size_t>(s) + 1);
    cuts.front() = lo;
    cuts.back() = hi;
    for (int k = 1; k < s; ++k)
        cuts[static_cast<std::size_t>(k)] = lo + k * width / s;

    std::vector<Cell> children(static_cast<std::size_t>(s));
    for (int k = 0; k < s; ++k) {
        Cell& c = children[static_cast<std::size_t>(k)];
        c.parent = parent.id;
        c.depth = parent.depth + 1;
        c.split_dim = (parent.split_dim + 1) % dim_;
        c.lower = parent.lower;
        c.upper = parent.upper;
        c.lower[j] = cuts[static_cast<std::size_t>(k)];
        c.upper[j] = cuts[static_cast<std::size_t>(k) + 1];
        if (k == middle) {
            c.center = parent.center;
            c.value = parent.value;
        } else {
            c.center.resize(dim_);
            for (std::size_t d = 0; d < dim_; ++d)
                c.center[d] = std::midpoint(c.lower[d], c.upper[d]);
        }
    }

    // Evaluate everything before touching the tree.
    for (int k = 0; k < s; ++k)
        if (k != middle)
            children[static_cast<std::size_t>(k)].value =
                evaluate(children[static_cast<std::size_t>(k)].center);

    Cell& stored_parent = cells_[static_cast<std::size_t>(leaf)];
    stored_parent.is_leaf = false;
    leaves_by_depth_[static_cast<std::size_t>(parent.depth)].erase(
        {comparison_key(parent.value), parent.id});

    std::vector<CellId> ids;
    ids.reserve(children.size());
    for (int k = 0; k < s; ++k) {
        Cell& c = children[static_cast<std::size_t>(k)];
        c.id = static_cast<CellId>(cells_.size());
        ids.push_back(c.id);
        cells_.push_back(std::move(c));
        if (k != middle)
            record(cells_.back());
        add_leaf(cells_.back());
    }
    split_log_.push_back(leaf);
    return ids;
}

SweepResult PartitionTree::sweep()
{
    SweepResult result;
    const int depth_cap = std::min(deepest_leaf_depth(), params_.depth_schedule.max_depth(eval_count_));
    double best_split = std::numeric_limits<double>::infinity();
    for (int h = 0; h <= depth_cap; ++h) {
        const LeafSet& at_depth = leaves_by_depth_[static_cast<std::size_t>(h)];
        if (at_depth.empty())
            continue;
        const auto [key, id] = *at_depth.begin();
        if (!(key < best_split))
            continue;
        if (!can_split()) {
            result.budget_exhausted = true;
            break;
        }
        split_leaf(id);
        result.split.push_back(id);
        best_split = key;
    }
    return result;
}

Incumbent PartitionTree::incumbent() const
{
    const Cell& c = cell(incumbent_id_);
    return Incumbent{c.center, c.value, c.id};
}

std::vector<CellId> PartitionTree::leaves_at(int depth) const
{
    std::vector<CellId> out;
    if (depth < 0 || static_cast<std::size_t>(depth) >= leaves_by_depth_.size())
        return out;
    for (const auto& entry : leaves_by_depth_[static_cast<std::size_t>(depth)])
        out.push_back(entry.second);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CellId> PartitionTree::leaves() const
{
    std::vector<CellId> out;
    for (const auto& level : leaves_by_depth_)
        for (const auto& entry : level)
            out.push_back(entry.second);
    std::sort(out.begin(), out.end());
    return out;
}

int PartitionTree::deepest_leaf_depth() const
{
    for (std::size_t h = leaves_by_depth_.size(); h-- > 0;)
        if (!leaves_by_depth_[h].empty())
            return static_cast<int>(h);
    return -1;
}

RunResult run_soo(Objective& objective, EvalCount budget, const SooParams& params)
{
    if (budget < 1)
        throw InvalidParams("SOO budget must be at least 1");

    PartitionTree tree(objective, params, budget);
    while (tree.can_split()) {
        const SweepResult r = tree.sweep();
        // No split with budget left means every reachable leaf is above the
        // depth cap or non-finite; the cap only moves with the eval count.
        if (r.split.empty())
            break;
    }

    const Incumbent best = tree.incumbent();
    if (!std::isfinite(best.value))
        throw ObjectiveDegenerate("every evaluated point of '" + objective.name() +
                                  "' returned a non-finite value");

    const double sign = params.minimize ? 1.0 : -1.0;
    RunResult result;
    result.best_point = best.point;
    result.best_value = sign * best.value;
    result.evals_used = tree.eval_count();
    result.trace = tree.trace();
    if (!params.minimize)
        for (auto& p : result.trace)
            p.best_value = -p.best_value;
    result.splits = tree.split_log();
    attach_ratio(result, objective);
    return result;
}

} // namespace soo
