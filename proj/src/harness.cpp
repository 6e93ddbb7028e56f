#include "soo/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "soo/baselines.hpp"
#include "soo/errors.hpp"
#include "soo/refine.hpp"

namespace soo {

std::string_view algorithm_name(Algorithm algo)
{
    switch (algo) {
    case Algorithm::soo:
        return "soo";
    case Algorithm::soo_refine:
        return "soo-refine";
    case Algorithm::random:
        return "random";
    case Algorithm::ucb_grid:
        return "ucb-grid";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name)
{
    for (Algorithm a : {Algorithm::soo, Algorithm::soo_refine, Algorithm::random, Algorithm::ucb_grid})
        if (algorithm_name(a) == name)
            return a;
    throw InvalidParams("unknown algorithm '" + std::string(name) + "'");
}

DepthSchedule parse_depth_schedule(std::string_view text)
{
    if (text == "paper")
        return DepthSchedule::paper();
    if (text == "unbounded")
        return DepthSchedule::unbounded();
    constexpr std::string_view prefix = "const:";
    if (text.starts_with(prefix)) {
        const std::string_view digits = text.substr(prefix.size());
        int depth = -1;
        const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), depth);
        if (res.ec == std::errc() && res.ptr == digits.data() + digits.size() && !digits.empty())
            return DepthSchedule::constant(depth);
    }
    throw InvalidParams("depth schedule must be paper, unbounded or const:<h>, got '" +
                        std::string(text) + "'");
}

BudgetMode BudgetMode::fixed(EvalCount n)
{
    if (n < 1)
        throw InvalidParams("budget must be at least 1");
    return BudgetMode(false, n);
}

EvalCount BudgetMode::resolve(std::size_t dim) const
{
    return cec_ ? static_cast<EvalCount>(10000 * dim) : n_;
}

PhaseBudgets split_budget(EvalCount total, double fraction)
{
    const EvalCount refine = refine_reserve(total, fraction);
    const double share = fraction * static_cast<double>(total);
    // ceil(share), unless share is an integer up to rounding.
    const EvalCount ceil_share = share - static_cast<double>(refine) > 1e-9 * std::max(1.0, share)
                                     ? refine + 1
                                     : refine;
    return PhaseBudgets{total - ceil_share, refine};
}

void RunConfig::validate() const
{
    suite_index(function);
    if (dim < 1)
        throw BadDimension("dimension must be at least 1");
    if (budget.resolve(dim) < 1)
        throw InvalidParams("budget must be at least 1");
    if (!(refine_fraction > 0.0 && refine_fraction < 1.0))
        throw InvalidParams("refine fraction must lie in (0, 1)");
    if (grid_arms < 0)
        throw InvalidParams("grid arm count must be non-negative");
    soo_params.validate();
}

std::string run_basename(const RunConfig& config)
{
    return config.function + "_" + std::to_string(config.dim) + "_" +
           std::string(algorithm_name(config.algorithm)) + "_" +
           std::to_string(config.budget.resolve(config.dim));
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw InvalidParams("malformed number '" + std::string(s) + "'");
    return v;
}

std::string trace_csv(const RunResult& run, double f_star)
{
    std::string out = "eval_index,best_value,ratio\n";
    out.reserve(out.size() + run.trace.size() * 48);
    for (const auto& p : run.trace) {
        out += std::to_string(p.eval_index);
        out += ',';
        out += format_double(p.best_value);
        out += ',';
        out += format_double(p.best_value / f_star);
        out += '\n';
    }
    return out;
}

std::vector<TraceRow> parse_trace_csv(std::string_view text)
{
    std::vector<TraceRow> rows;
    std::size_t pos = text.find('\n');
    if (pos == std::string_view::npos || text.substr(0, pos) != "eval_index,best_value,ratio")
        throw InvalidParams("trace CSV header missing");
    ++pos;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = line.find(',', c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos)
            throw InvalidParams("malformed trace row '" + std::string(line) + "'");
        EvalCount index = 0;
        const auto res = std::from_chars(line.data(), line.data() + c1, index);
        if (res.ec != std::errc() || res.ptr != line.data() + c1)
            throw InvalidParams("malformed eval index in '" + std::string(line) + "'");
        rows.push_back({index, parse_double(line.substr(c1 + 1, c2 - c1 - 1)),
                        parse_double(line.substr(c2 + 1))});
        pos = end + 1;
    }
    return rows;
}

nlohmann::json result_json(const RunConfig& config, const ExperimentResult& result)
{
    nlohmann::json params = {
        {"s_children", config.soo_params.s_children},
    };
    switch (config.soo_params.depth_schedule.kind()) {
    case DepthSchedule::Kind::paper_log32:
        params["depth_schedule"] = "paper";
        break;
    case DepthSchedule::Kind::constant:
        params["depth_schedule"] =
            "const:" + std::to_string(config.soo_params.depth_schedule.constant_depth());
        break;
    case DepthSchedule::Kind::unbounded:
        params["depth_schedule"] = "unbounded";
        break;
    }

    nlohmann::json cfg = {
        {"function", config.function},
        {"dim", config.dim},
        {"algorithm", algorithm_name(config.algorithm)},
        {"budget", result.budget},
        {"budget_mode", config.budget.is_cec() ? "cec" : "fixed"},
        {"shift_seed", config.shift_seed},
        {"soo_params", params},
    };
    if (config.algorithm == Algorithm::soo_refine)
        cfg["refine_fraction"] = config.refine_fraction;
    if (config.algorithm == Algorithm::random || config.algorithm == Algorithm::ucb_grid)
        cfg["seed"] = config.seed;
    if (config.algorithm == Algorithm::ucb_grid)
        cfg["grid_arms"] = config.grid_arms == 0 ? default_grid_arms(config.dim) : config.grid_arms;

    return {
        {"config", cfg},
        {"best_point", result.run.best_point},
        {"best_value", result.run.best_value},
        {"f_star", result.f_star},
        {"ratio", result.run.ratio},
        {"evals_used", result.run.evals_used},
        {"wall_clock_seconds", result.wall_seconds},
    };
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot open '" + tmp.string() + "' for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.close();
        if (!out) {
            std::filesystem::remove(tmp);
            throw Error("failed writing '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, path);
}

ExperimentResult run_experiment(const RunConfig& config)
{
    config.validate();
    ExperimentResult out;
    out.budget = config.budget.resolve(config.dim);
    Objective objective = make_objective(config.function, config.dim, config.shift_seed, out.budget);
    out.f_star = known_optimum(objective).value;

    const auto start = std::chrono::steady_clock::now();
    switch (config.algorithm) {
    case Algorithm::soo:
        out.run = run_soo(objective, out.budget, config.soo_params);
        break;
    case Algorithm::soo_refine: {
        const PhaseBudgets phases = split_budget(out.budget, config.refine_fraction);
        const RunResult soo_phase =
            run_soo(objective, std::max<EvalCount>(1, phases.soo), config.soo_params);
        out.run = refine_run(soo_phase, objective, config.refine_fraction);
        break;
    }
    case Algorithm::random:
        out.run = run_random_search(objective, out.budget, config.seed);
        break;
    case Algorithm::ucb_grid:
        out.run = run_ucb_grid(objective, out.budget,
                               config.grid_arms == 0 ? default_grid_arms(config.dim)
                                                     : config.grid_arms,
                               config.seed);
        break;
    }
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!config.output_dir.empty()) {
        std::filesystem::create_directories(config.output_dir);
        const std::string base = run_basename(config);
        if (config.format != OutputFormat::json) {
            const auto path = config.output_dir / (base + ".csv");
            write_file_atomic(path, trace_csv(out.run, out.f_star));
            out.files.push_back(path);
        }
        if (config.format != OutputFormat::csv) {
            const auto path = config.output_dir / (base + ".json");
            write_file_atomic(path, result_json(config, out).dump(2) + "\n");
            out.files.push_back(path);
        }
    }
    return out;
}

GridSummary run_grid(const GridConfig& config)
{
    if (config.functions.empty() || config.dims.empty() || config.algorithms.empty())
        throw InvalidParams("grid needs at least one function, dimension and algorithm");

    GridSummary summary;
    for (const auto& f : config.functions)
        for (std::size_t d : config.dims)
            for (Algorithm a : config.algorithms)
                summary.cells.push_back(GridCell{f, d, a, std::nullopt, {}});

    auto run_cell = [&](GridCell& cell) {
        RunConfig rc = config.base;
        rc.function = cell.function;
        rc.dim = cell.dim;
        rc.algorithm = cell.algorithm;
        try {
            cell.ratio = run_experiment(rc).run.ratio;
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    };

    const int jobs = std::max(1, config.jobs);
    if (jobs == 1) {
        for (auto& cell : summary.cells)
            run_cell(cell);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < summary.cells.size(); i = next++)
                    run_cell(summary.cells[i]);
            });
        for (auto& t : workers)
            t.join();
    }

    std::ostringstream csv;
    csv << "function";
    for (std::size_t d : config.dims)
        for (Algorithm a : config.algorithms)
            csv << ',' << algorithm_name(a) << '_' << d << 'D';
    csv << '\n';
    std::size_t i = 0;
    for (const auto& f : config.functions) {
        csv << f;
        for (std::size_t d = 0; d < config.dims.size() * config.algorithms.size(); ++d, ++i) {
            const GridCell& cell = summary.cells[i];
            csv << ',' << (cell.ratio ? format_double(*cell.ratio) : std::string("error"));
        }
        csv << '\n';
    }
    summary.csv = csv.str();

    if (!config.base.output_dir.empty()) {
        std::filesystem::create_directories(config.base.output_dir);
        write_file_atomic(config.base.output_dir / "summary.csv", summary.csv);
    }
    return summary;
}

std::string BudgetReport::csv() const
{
    std::string out = "budget,best_value,ratio,improvement\n";
    for (const auto& r : rows) {
        out += std::to_string(r.budget) + "," + format_double(r.best_value) + "," +
               format_double(r.ratio) + ",";
        if (r.improvement)
            out += format_double(*r.improvement);
        out += '\n';
    }
    return out;
}

BudgetReport compare_budgets(const std::string& function, std::size_t dim,
                             const std::vector<EvalCount>& budgets, const SooParams& params,
                             std::uint64_t shift_seed)
{
    if (budgets.empty())
        throw InvalidParams("need at least one budget");
    for (std::size_t i = 1; i < budgets.size(); ++i)
        if (budgets[i] <= budgets[i - 1])
            throw InvalidParams("budgets must be strictly increasing");

    BudgetReport report{function, dim, {}};
    for (EvalCount budget : budgets) {
        Objective objective = make_objective(function, dim, shift_seed, budget);
        const RunResult r = run_soo(objective, budget, params);
        BudgetRow row{budget, r.best_value, r.ratio, std::nullopt};
        if (!report.rows.empty()) {
            const double prev = report.rows.back().ratio;
            row.improvement = (prev - r.ratio) / prev;
        }
        report.rows.push_back(row);
    }
    return report;
}

} // namespace soo
