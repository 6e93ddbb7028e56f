#ifndef SOO_BASELINES_HPP
#define SOO_BASELINES_HPP

#include <cstdint>
#include <vector>

#include "soo/objective.hpp"
#include "soo/run_result.hpp"

namespace soo {

/// Evaluates `budget` points drawn uniformly from the box.
RunResult run_random_search(Objective& objective, EvalCount budget, std::uint64_t seed);

/// Default arm count for the grid bandit: min(3^D, 3^6).
std::int64_t default_grid_arms(std::size_t dim);

/// Cells per dimension for a grid of at most `arms` cells: dimensions are
/// refined round-robin one cell at a time while the product fits.
std::vector<std::int64_t> grid_shape(std::size_t dim, std::int64_t arms);

/// UCB over a grid of the box. Each arm is a grid cell; pulling it evaluates
/// a uniform point inside the cell and earns the negated value. The
/// exploration bonus is scaled by the observed value range so the constant
/// c keeps its meaning for unnormalized objectives.
RunResult run_ucb_grid(Objective& objective, EvalCount budget, std::int64_t arms,
                       std::uint64_t seed, double c = 2.0);

} // namespace soo

#endif
