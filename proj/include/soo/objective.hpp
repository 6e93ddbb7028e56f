#ifndef SOO_OBJECTIVE_HPP
#define SOO_OBJECTIVE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace soo {

using EvalCount = std::int64_t;

/// Axis-aligned search box.
struct Box
{
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t dim() const { return lower.size(); }

    /// Throws InvalidBounds unless both vectors have the same non-zero size,
    /// are finite and satisfy lower[j] < upper[j].
    void validate() const;

    bool contains(std::span<const double> x) const;

    double volume() const;

    static Box cube(std::size_t dim, double lo, double hi);
};

struct KnownOptimum
{
    std::vector<double> point;
    double value;
};

/// A bounded black-box function behind a hard evaluation budget.
///
/// Every successful call to evaluate() increments the meter by one. Calls past
/// the budget throw BudgetExhausted and leave the meter untouched; points
/// outside the box throw OutOfBounds (no clamping happens here).
///
/// Instances are single-owner: the meter is plain mutable state.
class Objective
{
public:
    using Function = std::function<double(std::span<const double>)>;

    Objective(std::string name, Box box, Function f, EvalCount budget);

    double evaluate(std::span<const double> x);

    const std::string& name() const { return name_; }
    const Box& box() const { return box_; }
    std::size_t dim() const { return box_.dim(); }

    EvalCount meter() const { return meter_; }
    EvalCount budget() const { return budget_; }
    EvalCount remaining() const { return budget_ - meter_; }

    /// 1-based position in the suite, 0 for user-supplied functions.
    int suite_index() const { return suite_index_; }
    double bias() const { return bias_; }
    const std::vector<double>& shift() const { return shift_; }

    const std::optional<KnownOptimum>& optimum() const { return optimum_; }
    void set_optimum(KnownOptimum opt) { optimum_ = std::move(opt); }

    /// Same box and budget, values mapped through g, fresh meter.
    Objective transformed(std::function<double(double)> g) const;

private:
    friend Objective make_objective(std::string_view, std::size_t, std::vector<double>, EvalCount);

    std::string name_;
    Box box_;
    Function f_;
    EvalCount budget_;
    EvalCount meter_ = 0;

    int suite_index_ = 0;
    double bias_ = 0.0;
    std::vector<double> shift_;
    std::optional<KnownOptimum> optimum_;
};

/// Suite function names in index order (bias = 100 * (position + 1)).
const std::vector<std::string>& suite_functions();

/// 1-based suite index; throws UnknownFunction.
int suite_index(std::string_view name);

inline constexpr std::uint64_t kDefaultShiftSeed = 2014;

/// Deterministic shift in [-2, 2)^dim from a 64-bit LCG
/// (state = 6364136223846793005 * state + 1442695040888963407, top 53 bits
/// mapped to [0, 1) and then affinely to [-2, 2)).
std::vector<double> shift_from_seed(std::uint64_t seed, std::size_t dim);

/// Builds a shifted, biased suite member on [-5, 5]^dim.
Objective make_objective(std::string_view name, std::size_t dim, std::vector<double> shift,
                         EvalCount budget);
Objective make_objective(std::string_view name, std::size_t dim, std::uint64_t shift_seed,
                         EvalCount budget);

/// Stored optimum; never consumes budget. Throws InvalidParams when the
/// objective has no known optimum.
KnownOptimum known_optimum(const Objective& objective);

/// name, index, bias, box, dim, shift and f* of every suite function.
nlohmann::json suite_manifest(std::size_t dim, std::uint64_t shift_seed = kDefaultShiftSeed);

} // namespace soo

#endif
