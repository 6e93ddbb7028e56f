#include "soo/objective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "soo/errors.hpp"

namespace soo {

void Box::validate() const
{
    if (lower.empty() || lower.size() != upper.size())
        throw InvalidBounds("box bounds must be non-empty and of equal size");
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]))
            throw InvalidBounds("box bounds must be finite (dimension " + std::to_string(j) + ")");
        if (!(lower[j] < upper[j]))
            throw InvalidBounds("lower bound must be below upper bound (dimension " +
                                std::to_string(j) + ")");
    }
}

bool Box::contains(std::span<const double> x) const
{
    if (x.size() != lower.size())
        return false;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (!(x[j] >= lower[j] && x[j] <= upper[j]))
            return false;
    return true;
}

double Box::volume() const
{
    double v = 1.0;
    for (std::size_t j = 0; j < lower.size(); ++j)
        v *= upper[j] - lower[j];
    return v;
}

Box Box::cube(std::size_t dim, double lo, double hi)
{
    return Box{std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
}

Objective::Objective(std::string name, Box box, Function f, EvalCount budget)
    : name_(std::move(name)), box_(std::move(box)), f_(std::move(f)), budget_(budget)
{
    box_.validate();
    if (budget_ < 0)
        throw InvalidParams("budget must be non-negative");
    if (!f_)
        throw InvalidParams("objective function is empty");
}

double Objective::evaluate(std::span<const double> x)
{
    if (meter_ >= budget_)
        throw BudgetExhausted("evaluation budget of " + std::to_string(budget_) + " exhausted");
    if (!box_.contains(x))
        throw OutOfBounds("point outside the search box of '" + name_ + "'");
    ++meter_;
    return f_(x);
}

Objective Objective::transformed(std::function<double(double)> g) const
{
    Objective out(name_, box_, [f = f_, g](std::span<const double> x) { return g(f(x)); }, budget_);
    out.suite_index_ = suite_index_;
    out.bias_ = bias_;
    out.shift_ = shift_;
    if (optimum_)
        out.optimum_ = KnownOptimum{optimum_->point, g(optimum_->value)};
    return out;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Unbiased atomic functions of z = x - shift, each with minimum 0 at z = 0.

double sphere(std::span<const double> z)
{
    double s = 0.0;
    for (double v : z)
        s += v * v;
    return s;
}

// Axis-parallel hyper-ellipsoid, weights 1..D.
double ellipsoid(std::span<const double> z)
{
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        s += static_cast<double>(i + 1) * z[i] * z[i];
    return s;
}

// Shifted so the minimum (all ones) sits at z = 0.
double rosenbrock(std::span<const double> z)
{
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        const double a = z[i] + 1.0;
        const double b = z[i + 1] + 1.0;
        s += 100.0 * (b - a * a) * (b - a * a) + (a - 1.0) * (a - 1.0);
    }
    return s;
}

double rastrigin(std::span<const double> z)
{
    double s = 0.0;
    for (double v : z)
        s += v * v + 10.0 * (1.0 - std::cos(kTwoPi * v));
    return s;
}

double ackley(std::span<const double> z)
{
    const double n = static_cast<double>(z.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : z) {
        sq += v * v;
        cs += std::cos(kTwoPi * v);
    }
    // Written as two non-negative terms so rounding cannot dip below zero.
    const double a = 20.0 * (1.0 - std::exp(-0.2 * std::sqrt(sq / n)));
    const double b = std::exp(1.0) - std::exp(cs / n);
    return std::max(0.0, a) + std::max(0.0, b);
}

double griewank(std::span<const double> z)
{
    double s = 0.0;
    double p = 1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        s += z[i] * z[i] / 4000.0;
        p *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return s + (1.0 - p);
}

// Root of 4y^3 - 32y + 5 = 0 giving the global minimum of y^4 - 16y^2 + 5y.
constexpr double kStyblinskiArgmin = -2.903534027771178;

double styblinski_term(double y)
{
    return 0.5 * (y * y * y * y - 16.0 * y * y + 5.0 * y);
}

double styblinski_tang(std::span<const double> z)
{
    const double base = styblinski_term(kStyblinskiArgmin);
    double s = 0.0;
    for (double v : z)
        s += std::max(0.0, styblinski_term(v + kStyblinskiArgmin) - base);
    return s;
}

double composite3(std::span<const double> z)
{
    return sphere(z) + rastrigin(z) + ackley(z);
}

using Atomic = double (*)(std::span<const double>);

struct SuiteEntry
{
    const char* name;
    Atomic fn;
    std::size_t min_dim;
};

constexpr SuiteEntry kSuite[] = {
    {"sphere", sphere, 1},
    {"ellipsoid", ellipsoid, 1},
    {"rosenbrock", rosenbrock, 2},
    {"rastrigin", rastrigin, 1},
    {"ackley", ackley, 1},
    {"griewank", griewank, 1},
    {"styblinski_tang", styblinski_tang, 1},
    {"composite3", composite3, 1},
};

constexpr double kSuiteLower = -5.0;
constexpr double kSuiteUpper = 5.0;

} // namespace

const std::vector<std::string>& suite_functions()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : kSuite)
            out.emplace_back(e.name);
        return out;
    }();
    return names;
}

int suite_index(std::string_view name)
{
    for (std::size_t i = 0; i < std::size(kSuite); ++i)
        if (name == kSuite[i].name)
            return static_cast<int>(i) + 1;
    throw UnknownFunction("unknown suite function '" + std::string(name) + "'");
}

std::vector<double> shift_from_seed(std::uint64_t seed, std::size_t dim)
{
    constexpr std::uint64_t kMul = 6364136223846793005ULL;
    constexpr std::uint64_t kInc = 1442695040888963407ULL;
    std::vector<double> shift(dim);
    std::uint64_t state = seed;
    for (auto& s : shift) {
        state = kMul * state + kInc;
        const double u = static_cast<double>(state >> 11) * 0x1.0p-53;
        s = -2.0 + 4.0 * u;
    }
    return shift;
}

Objective make_objective(std::string_view name, std::size_t dim, std::vector<double> shift,
                         EvalCount budget)
{
    const int index = suite_index(name);
    const SuiteEntry& entry = kSuite[index - 1];
    if (dim < entry.min_dim)
        throw BadDimension(std::string(name) + " needs at least " + std::to_string(entry.min_dim) +
                           " dimension(s), got " + std::to_string(dim));
    if (shift.size() != dim)
        throw BadDimension("shift has " + std::to_string(shift.size()) + " components, expected " +
                           std::to_string(dim));
    for (double s : shift)
        if (!(s > kSuiteLower && s < kSuiteUpper))
            throw InvalidBounds("shift must lie strictly inside the box");

    const double bias = 100.0 * index;
    Objective::Function f = [fn = entry.fn, shift, bias](std::span<const double> x) {
        thread_local std::vector<double> z;
        z.resize(x.size());
        for (std::size_t j = 0; j < x.size(); ++j)
            z[j] = x[j] - shift[j];
        return bias + fn(z);
    };

    Objective obj(entry.name, Box::cube(dim, kSuiteLower, kSuiteUpper), std::move(f), budget);
    obj.suite_index_ = index;
    obj.bias_ = bias;
    obj.shift_ = shift;
    obj.optimum_ = KnownOptimum{std::move(shift), bias};
    return obj;
}

Objective make_objective(std::string_view name, std::size_t dim, std::uint64_t shift_seed,
                         EvalCount budget)
{
    return make_objective(name, dim, shift_from_seed(shift_seed, dim), budget);
}

KnownOptimum known_optimum(const Objective& objective)
{
    if (!objective.optimum())
        throw InvalidParams("objective '" + objective.name() + "' has no known optimum");
    return *objective.optimum();
}

nlohmann::json suite_manifest(std::size_t dim, std::uint64_t shift_seed)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& name : suite_functions()) {
        if (dim < kSuite[suite_index(name) - 1].min_dim)
            continue;
        const Objective obj = make_objective(name, dim, shift_seed, 0);
        out.push_back({
            {"name", name},
            {"index", obj.suite_index()},
            {"bias", obj.bias()},
            {"dim", dim},
            {"lower", obj.box().lower},
            {"upper", obj.box().upper},
            {"shift", obj.shift()},
            {"f_star", obj.optimum()->value},
        });
    }
    return out;
}

} // namespace soo
