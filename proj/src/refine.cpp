#include "soo/refine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "soo/errors.hpp"
#include "soo/partition_tree.hpp"

namespace soo {

void NmParams::validate() const
{
    if (!(alpha > 0.0))
        throw InvalidParams("alpha must be positive");
    if (!(gamma > 1.0))
        throw InvalidParams("gamma must exceed 1");
    if (!(rho > 0.0 && rho < 1.0))
        throw InvalidParams("rho must lie in (0, 1)");
    if (!(sigma > 0.0 && sigma < 1.0))
        throw InvalidParams("sigma must lie in (0, 1)");
    if (!(init_scale > 0.0 && init_scale < 0.5))
        throw InvalidParams("init_scale must lie in (0, 0.5)");
    if (!(tol >= 0.0))
        throw InvalidParams("tol must be non-negative");
}

namespace {

using Point = std::vector<double>;

struct Vertex
{
    Point x;
    double f;
};

// Counts evaluations against both the local cap and the objective budget,
// and keeps the best point ever seen.
class MeteredEval
{
public:
    MeteredEval(Objective& objective, EvalCount max_evals, LocalResult& out)
        : objective_(objective), max_evals_(max_evals), out_(out)
    {
    }

    std::optional<double> operator()(const Point& x)
    {
        if (out_.evals_used >= max_evals_ || out_.budget_exhausted)
            return std::nullopt;
        double f;
        try {
            f = objective_.evaluate(x);
        } catch (const BudgetExhausted&) {
            out_.budget_exhausted = true;
            return std::nullopt;
        }
        ++out_.evals_used;
        out_.values.push_back(f);
        if (out_.point.empty() || comparison_key(f) < comparison_key(out_.value)) {
            out_.point = x;
            out_.value = f;
        }
        return f;
    }

    bool exhausted() const { return out_.evals_used >= max_evals_ || out_.budget_exhausted; }

private:
    Objective& objective_;
    EvalCount max_evals_;
    LocalResult& out_;
};

void clamp_to(const Box& box, Point& x)
{
    for (std::size_t j = 0; j < x.size(); ++j)
        x[j] = std::clamp(x[j], box.lower[j], box.upper[j]);
}

// log |det| of the edge matrix (x_i - x_0), -inf for a flat simplex.
double log_volume(const std::vector<Vertex>& simplex)
{
    const std::size_t n = simplex.size() - 1;
    std::vector<double> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i * n + j] = simplex[i + 1].x[j] - simplex[0].x[j];

    double log_det = 0.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col]))
                pivot = r;
        const double p = m[pivot * n + col];
        if (p == 0.0)
            return -std::numeric_limits<double>::infinity();
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m[pivot * n + j], m[col * n + j]);
        log_det += std::log(std::abs(p));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = m[r * n + col] / p;
            for (std::size_t j = col; j < n; ++j)
                m[r * n + j] -= factor * m[col * n + j];
        }
    }
    return log_det;
}

// Fills vertices 1..D around simplex[0] with axis steps of scale * width,
// stepping inward where the outward step would leave the box. Returns false
// if the budget ran out.
bool build_simplex(std::vector<Vertex>& simplex, const Box& box, double scale, MeteredEval& eval)
{
    const std::size_t n = box.dim();
    simplex.resize(n + 1);
    for (std::size_t j = 0; j < n; ++j) {
        Point x = simplex[0].x;
        const double step = scale * (box.upper[j] - box.lower[j]);
        x[j] = x[j] + step <= box.upper[j] ? x[j] + step : x[j] - step;
        clamp_to(box, x);
        const auto f = eval(x);
        if (!f) {
            simplex.resize(j + 1);
            return false;
        }
        simplex[j + 1] = Vertex{std::move(x), *f};
    }
    return true;
}

bool vertex_less(const Vertex& a, const Vertex& b)
{
    return comparison_key(a.f) < comparison_key(b.f);
}

} // namespace

LocalResult nelder_mead(Objective& objective, std::span<const double> x0, EvalCount max_evals,
                        const NmParams& params)
{
    params.validate();
    const Box& box = objective.box();
    const std::size_t n = box.dim();
    if (x0.size() != n || !box.contains(x0))
        throw OutOfBounds("Nelder-Mead start point must lie inside the box");
    if (max_evals < static_cast<EvalCount>(n) + 1)
        throw InvalidParams("Nelder-Mead needs at least D + 1 evaluations");

    LocalResult out;
    MeteredEval eval(objective, max_evals, out);

    const auto f0 = eval(Point(x0.begin(), x0.end()));
    if (!f0)
        throw BudgetExhausted("no budget left to evaluate the Nelder-Mead start point");

    std::vector<Vertex> simplex{Vertex{Point(x0.begin(), x0.end()), *f0}};
    if (!build_simplex(simplex, box, params.init_scale, eval))
        return out;

    const double initial_log_volume = log_volume(simplex);
    const double collapse_threshold = initial_log_volume + std::log(1e-30);
    const std::size_t volume_check_every = std::max<std::size_t>(1, n);

    Point centroid(n);
    for (std::size_t iter = 1; !eval.exhausted(); ++iter) {
        std::stable_sort(simplex.begin(), simplex.end(), vertex_less);
        Vertex& best = simplex.front();
        Vertex& worst = simplex.back();
        const double second_worst = comparison_key(simplex[n - 1].f);
        if (comparison_key(worst.f) - comparison_key(best.f) <= params.tol)
            break;

        if (!out.restarted && iter % volume_check_every == 0 &&
            log_volume(simplex) < collapse_threshold) {
            out.restarted = true;
            simplex.resize(1);
            if (!build_simplex(simplex, box, params.init_scale / 10.0, eval))
                break;
            continue;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                centroid[j] += simplex[i].x[j];
        for (double& c : centroid)
            c /= static_cast<double>(n);

        auto along = [&](const Point& toward, double coef) {
            Point p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + coef * (toward[j] - centroid[j]);
            clamp_to(box, p);
            return p;
        };

        Point reflected = along(worst.x, -params.alpha);
        const auto fr = eval(reflected);
        if (!fr)
            break;
        const double kr = comparison_key(*fr);

        if (kr < comparison_key(best.f)) {
            Point expanded = along(reflected, params.gamma);
            const auto fe = eval(expanded);
            if (fe && comparison_key(*fe) < kr)
                worst = Vertex{std::move(expanded), *fe};
            else
                worst = Vertex{std::move(reflected), *fr};
            continue;
        }
        if (kr < second_worst) {
            worst = Vertex{std::move(reflected), *fr};
            continue;
        }

        const bool outside = kr < comparison_key(worst.f);
        Point contracted = outside ? along(reflected, params.rho) : along(worst.x, params.rho);
        const auto fc = eval(contracted);
        if (!fc)
            break;
        const double kc = comparison_key(*fc);
        if (outside ? kc <= kr : kc < comparison_key(worst.f)) {
            worst = Vertex{std::move(contracted), *fc};
            continue;
        }

        // Shrink toward the best vertex; the box is convex so no clamping.
        for (std::size_t i = 1; i <= n; ++i) {
            Point p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = best.x[j] + params.sigma * (simplex[i].x[j] - best.x[j]);
            const auto fs = eval(p);
            if (!fs)
                break;
            simplex[i] = Vertex{std::move(p), *fs};
        }
    }
    return out;
}

EvalCount refine_reserve(EvalCount budget, double fraction)
{
    if (!(fraction > 0.0 && fraction < 1.0))
        throw InvalidParams("refine fraction must lie in (0, 1)");
    const double share = fraction * static_cast<double>(budget);
    // 0.05 * 100000 must give 5000 even if the product lands an ulp below.
    const double nearest = std::round(share);
    if (std::abs(share - nearest) <= 1e-9 * std::max(1.0, share))
        return static_cast<EvalCount>(nearest);
    return static_cast<EvalCount>(std::floor(share));
}

RunResult refine_run(const RunResult& soo_result, Objective& objective, double fraction,
                     const NmParams& params)
{
    params.validate();
    return refine_run(soo_result, objective, fraction,
                      [&params](Objective& obj, std::span<const double> x0, EvalCount max_evals) {
                          return nelder_mead(obj, x0, max_evals, params);
                      });
}

RunResult refine_run(const RunResult& soo_result, Objective& objective, double fraction,
                     const LocalRefiner& refiner)
{
    const EvalCount reserve =
        std::min(refine_reserve(objective.budget(), fraction), objective.remaining());
    RunResult merged = soo_result;
    if (reserve < static_cast<EvalCount>(objective.dim()) + 1)
        return merged;

    const LocalResult local = refiner(objective, soo_result.best_point, reserve);

    double best_key = comparison_key(merged.best_value);
    EvalCount index = soo_result.evals_used;
    for (double v : local.values) {
        best_key = std::min(best_key, comparison_key(v));
        merged.trace.push_back({++index, best_key});
    }
    if (!local.point.empty() && comparison_key(local.value) < comparison_key(merged.best_value)) {
        merged.best_point = local.point;
        merged.best_value = local.value;
    }
    merged.evals_used += local.evals_used;
    merged.budget_exhausted = merged.budget_exhausted || local.budget_exhausted;
    attach_ratio(merged, objective);
    return merged;
}

} // namespace soo
