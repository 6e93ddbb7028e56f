#ifndef SOO_HARNESS_HPP
#define SOO_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "soo/objective.hpp"
#include "soo/partition_tree.hpp"
#include "soo/run_result.hpp"

namespace soo {

enum class Algorithm { soo, soo_refine, random, ucb_grid };

std::string_view algorithm_name(Algorithm algo);
/// Accepts "soo", "soo-refine", "random" and "ucb-grid".
Algorithm parse_algorithm(std::string_view name);

/// "paper", "unbounded" or "const:<h>".
DepthSchedule parse_depth_schedule(std::string_view text);

/// Either a fixed evaluation count or the benchmark rule N = 10^4 * D.
class BudgetMode
{
public:
    static BudgetMode fixed(EvalCount n);
    static BudgetMode cec() { return BudgetMode(true, 0); }

    EvalCount resolve(std::size_t dim) const;
    bool is_cec() const { return cec_; }

private:
    BudgetMode(bool cec, EvalCount n) : cec_(cec), n_(n) {}

    bool cec_;
    EvalCount n_;
};

/// Splits a budget between the SOO phase and local refinement:
/// the refiner gets floor(fraction * N), SOO gets N - ceil(fraction * N).
struct PhaseBudgets
{
    EvalCount soo;
    EvalCount refine;
};
PhaseBudgets split_budget(EvalCount total, double fraction);

enum class OutputFormat { csv, json, both };

struct RunConfig
{
    std::string function = "sphere";
    std::size_t dim = 2;
    BudgetMode budget = BudgetMode::cec();
    Algorithm algorithm = Algorithm::soo;
    SooParams soo_params;
    double refine_fraction = 0.05;
    /// Seed of the random and ucb-grid baselines.
    std::uint64_t seed = 1;
    /// Arms of the ucb-grid baseline, 0 for the default.
    std::int64_t grid_arms = 0;
    std::uint64_t shift_seed = kDefaultShiftSeed;
    /// No files are written when empty.
    std::filesystem::path output_dir;
    OutputFormat format = OutputFormat::both;

    void validate() const;
};

struct ExperimentResult
{
    RunResult run;
    EvalCount budget = 0;
    double f_star = 0.0;
    double wall_seconds = 0.0;
    std::vector<std::filesystem::path> files;
};

/// `<function>_<dim>_<algorithm>_<budget>`
std::string run_basename(const RunConfig& config);

/// Runs one configured algorithm on a fresh objective and writes the trace
/// CSV and result JSON requested by the config.
ExperimentResult run_experiment(const RunConfig& config);

/// Formats with 17 significant digits, enough to round-trip any double.
std::string format_double(double v);
double parse_double(std::string_view s);

struct TraceRow
{
    EvalCount eval_index;
    double best_value;
    double ratio;
};

std::string trace_csv(const RunResult& run, double f_star);
std::vector<TraceRow> parse_trace_csv(std::string_view text);
nlohmann::json result_json(const RunConfig& config, const ExperimentResult& result);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

struct GridConfig
{
    std::vector<std::string> functions;
    std::vector<std::size_t> dims;
    std::vector<Algorithm> algorithms;
    /// Shared settings; function, dim and algorithm are overridden per cell.
    RunConfig base;
    int jobs = 1;
};

struct GridCell
{
    std::string function;
    std::size_t dim;
    Algorithm algorithm;
    std::optional<double> ratio;
    std::string error;
};

struct GridSummary
{
    std::vector<GridCell> cells;
    /// One row per function, one column per (dim, algorithm).
    std::string csv;
};

/// Runs the cross product of functions, dims and algorithms. A failing cell
/// is reported as `error` without affecting the others. Writes summary.csv
/// when the base config has an output directory.
GridSummary run_grid(const GridConfig& config);

struct BudgetRow
{
    EvalCount budget;
    double best_value;
    double ratio;
    /// (previous ratio - ratio) / previous ratio; absent on the first row.
    std::optional<double> improvement;
};

struct BudgetReport
{
    std::string function;
    std::size_t dim;
    std::vector<BudgetRow> rows;

    std::string csv() const;
};

/// Runs SOO once per budget (increasing) and reports relative improvements.
BudgetReport compare_budgets(const std::string& function, std::size_t dim,
                             const std::vector<EvalCount>& budgets, const SooParams& params = {},
                             std::uint64_t shift_seed = kDefaultShiftSeed);

} // namespace soo

#endif
