#include "eagle/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace eagle {

bool Box::contains(std::span<const double> x) const
{
    if (x.size() != dim())
        return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i] >= lower[i] && x[i] <= upper[i]))
            return false;
    return true;
}

bool Box::empty() const
{
    if (lower.size() != upper.size() || lower.empty())
        return true;
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (!(lower[i] <= upper[i]))
            return true;
    return false;
}

Vector Box::width() const
{
    Vector w(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        w[i] = upper[i] - lower[i];
    return w;
}

Box Box::intersect(const Box& other) const
{
    if (other.dim() != dim())
        throw std::invalid_argument("Box::intersect: dimension mismatch");
    Box out{lower, upper};
    for (std::size_t i = 0; i < dim(); ++i) {
        out.lower[i] = std::max(lower[i], other.lower[i]);
        out.upper[i] = std::min(upper[i], other.upper[i]);
    }
    return out;
}

Box Box::around(std::span<const double> center, double radius_frac, const Box& bounds)
{
    if (center.size() != bounds.dim())
        throw std::invalid_argument("Box::around: dimension mismatch");
    Box local{Vector(center.begin(), center.end()), Vector(center.begin(), center.end())};
    for (std::size_t i = 0; i < center.size(); ++i) {
        const double half = radius_frac * (bounds.upper[i] - bounds.lower[i]);
        local.lower[i] -= half;
        local.upper[i] += half;
    }
    return local.intersect(bounds);
}

void PenaltyConfig::validate() const
{
    if (!(lambda >= 0.0))
        throw std::invalid_argument("PenaltyConfig: lambda must be non-negative");
    if (!(exponent >= 1.0))
        throw std::invalid_argument("PenaltyConfig: exponent must be at least 1");
    if (!(feasibility_tol >= 0.0))
        throw std::invalid_argument("PenaltyConfig: feasibility tolerance must be non-negative");
}

Vector Problem::snap(std::span<const double> x) const
{
    Vector out(x.begin(), x.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double step = 0.0;
        if (!quantization.empty() && quantization[i] > 0.0)
            step = quantization[i];
        else if (!integer_mask.empty() && integer_mask[i])
            step = 1.0;
        if (step == 0.0)
            continue;
        double v = std::round(out[i] / step) * step;
        if (v < bounds.lower[i])
            v = std::ceil(bounds.lower[i] / step - 1e-12) * step;
        if (v > bounds.upper[i])
            v = std::floor(bounds.upper[i] / step + 1e-12) * step;
        out[i] = std::clamp(v, bounds.lower[i], bounds.upper[i]);
    }
    return out;
}

void Problem::validate() const
{
    if (bounds.lower.size() != bounds.upper.size() || bounds.lower.empty())
        throw std::invalid_argument("Problem " + name + ": malformed bounds");
    for (std::size_t i = 0; i < dim(); ++i)
        if (!(bounds.lower[i] < bounds.upper[i]))
            throw std::invalid_argument("Problem " + name + ": lower bound must be below upper bound");
    if (!objective)
        throw std::invalid_argument("Problem " + name + ": missing objective");
    if (!integer_mask.empty() && integer_mask.size() != dim())
        throw std::invalid_argument("Problem " + name + ": integer mask size mismatch");
    if (!quantization.empty() && quantization.size() != dim())
        throw std::invalid_argument("Problem " + name + ": quantization size mismatch");
    if (known_best_point && known_best_point->size() != dim())
        throw std::invalid_argument("Problem " + name + ": known best point size mismatch");
}

Evaluation evaluate(const Problem& problem, std::span<const double> x, const PenaltyConfig& penalty)
{
    if (x.size() != problem.dim())
        throw std::invalid_argument("evaluate: expected " + std::to_string(problem.dim()) + " variables, got " +
                                    std::to_string(x.size()));
    const Vector snapped = problem.snap(x);

    Evaluation ev;
    ev.raw = problem.objective(snapped);
    bool finite = std::isfinite(ev.raw);

    ev.violations.resize(problem.constraints.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
        const double g = problem.constraints[i](snapped);
        if (!std::isfinite(g)) {
            finite = false;
            ev.violations[i] = std::numeric_limits<double>::infinity();
            continue;
        }
        const double v = std::max(0.0, g);
        ev.violations[i] = v;
        if (v > penalty.feasibility_tol)
            ev.feasible = false;
        if (v > 0.0)
            sum += penalty.exponent == 1.0 ? v : std::pow(v, penalty.exponent);
    }

    if (!finite) {
        ev.feasible = false;
        ev.penalized = std::numeric_limits<double>::infinity();
    }
    else if (ev.feasible) {
        ev.penalized = ev.raw;
    }
    else {
        ev.penalized = ev.raw + penalty.lambda * sum;
        if (std::isnan(ev.penalized))
            ev.penalized = std::numeric_limits<double>::infinity();
    }
    return ev;
}

Evaluator::Evaluator(const Problem& problem, PenaltyConfig penalty) : problem_(&problem), penalty_(penalty)
{
    penalty_.validate();
}

Evaluation Evaluator::operator()(std::span<const double> x)
{
    Evaluation ev = evaluate(*problem_, x, penalty_);
    ++count_;
    if (count_ == 1 || ev.penalized < best_.penalized) {
        best_ = ev;
        best_point_ = problem_->snap(x);
        trace_.push_back({count_, ev.penalized, ev.feasible});
    }
    return ev;
}

} // namespace eagle
