#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eagle {

using Vector = std::vector<double>;

/// Axis-aligned box [lower, upper].
struct Box {
    Vector lower;
    Vector upper;

    std::size_t dim() const noexcept { return lower.size(); }
    bool contains(std::span<const double> x) const;
    bool empty() const;
    Vector width() const;
    Box intersect(const Box& other) const;
    /// Box of half-width `radius_frac * width(bounds)` around `center`,
    /// intersected with `bounds`.
    static Box around(std::span<const double> center, double radius_frac, const Box& bounds);
};

/// Static penalty: penalized = raw + lambda * sum(v_i^exponent), v_i = max(0, g_i).
struct PenaltyConfig {
    double lambda = 1e6;
    double exponent = 1.0;
    /// A point is feasible when every v_i <= feasibility_tol; feasible points
    /// are not penalized.
    double feasibility_tol = 1e-6;

    void validate() const;
};

struct Evaluation {
    double raw = 0.0;
    Vector violations;
    double penalized = 0.0;
    bool feasible = true;
};

using ScalarFunction = std::function<double(std::span<const double>)>;

/// Box-bounded minimization problem with inequality constraints g_i(x) <= 0.
///
/// Immutable once built; safe to share across concurrent runs.
struct Problem {
    std::string name;
    Box bounds;
    ScalarFunction objective;
    std::vector<ScalarFunction> constraints;
    std::vector<bool> integer_mask;    // empty or dim() entries
    Vector quantization;               // empty or dim() entries; 0 = continuous
    std::optional<double> known_best_value;
    std::optional<Vector> known_best_point;

    std::size_t dim() const noexcept { return bounds.dim(); }

    /// Projects x onto the model's discrete structure: integer variables are
    /// rounded to the nearest integer and quantized variables to the nearest
    /// grid multiple, then pulled back inside the bounds along the same grid.
    Vector snap(std::span<const double> x) const;

    /// Throws std::invalid_argument if the definition is malformed.
    void validate() const;
};

/// Pure evaluation of `x` (snapped first). Does not count.
///
/// Non-finite objective or constraint values yield penalized = +inf and
/// feasible = false.
Evaluation evaluate(const Problem& problem, std::span<const double> x, const PenaltyConfig& penalty);

/// Best-so-far sample: `evals` is the evaluation count at which `best` was
/// first reached.
struct TracePoint {
    std::size_t evals = 0;
    double best = 0.0;
    bool feasible = false;
};

/// Counting front end to evaluate(). Every call is one objective evaluation.
///
/// Also tracks the best point seen so far and a trace of strict
/// improvements, so evaluations-to-target can be read off exactly. One
/// Evaluator belongs to one run.
class Evaluator {
public:
    Evaluator(const Problem& problem, PenaltyConfig penalty);

    Evaluation operator()(std::span<const double> x);

    const Problem& problem() const noexcept { return *problem_; }
    const PenaltyConfig& penalty() const noexcept { return penalty_; }
    std::size_t count() const noexcept { return count_; }

    bool has_best() const noexcept { return count_ > 0; }
    /// Snapped coordinates of the best evaluation.
    const Vector& best_point() const noexcept { return best_point_; }
    const Evaluation& best() const noexcept { return best_; }
    const std::vector<TracePoint>& trace() const noexcept { return trace_; }

private:
    const Problem* problem_;
    PenaltyConfig penalty_;
    std::size_t count_ = 0;
    Vector best_point_;
    Evaluation best_;
    std::vector<TracePoint> trace_;
};

} // namespace eagle
