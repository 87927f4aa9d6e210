#include "eagle/benchmarks.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eagle {

namespace {

using std::numbers::pi;

Box uniform_box(std::size_t dim, double lo, double hi)
{
    return Box{Vector(dim, lo), Vector(dim, hi)};
}

double ackley(std::span<const double> x)
{
    const double d = static_cast<double>(x.size());
    double sq = 0.0, cs = 0.0;
    for (double xi : x) {
        sq += xi * xi;
        cs += std::cos(2.0 * pi * xi);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d) + 20.0 + std::numbers::e;
}

double sphere(std::span<const double> x)
{
    double s = 0.0;
    for (double xi : x)
        s += xi * xi;
    return s;
}

double rosenbrock(std::span<const double> x)
{
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i] - 1.0;
        const double b = x[i + 1] - x[i] * x[i];
        s += a * a + 100.0 * b * b;
    }
    return s;
}

double schwefel(std::span<const double> x)
{
    double s = 0.0;
    for (double xi : x)
        s -= xi * std::sin(std::sqrt(std::abs(xi)));
    return s;
}

double shubert_factor(double x)
{
    double s = 0.0;
    for (std::size_t i = 1; i <= shubert_terms; ++i) {
        const double k = static_cast<double>(i);
        s += k * std::cos(k + (k + 1.0) * x);
    }
    return s;
}

double shubert(std::span<const double> x)
{
    return shubert_factor(x[0]) * shubert_factor(x[1]);
}

// Pressure vessel, x = (d1, d2, r, L).
double vessel_cost(std::span<const double> x)
{
    const double d1 = x[0], d2 = x[1], r = x[2], len = x[3];
    return 0.6224 * d1 * r * len + 1.7781 * d2 * r * r + 3.1661 * d1 * d1 * len + 19.84 * d1 * d1 * r;
}

// Speed reducer, x = (x1..x7).
double reducer_weight(std::span<const double> x)
{
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4], x6 = x[5], x7 = x[6];
    return 0.7854 * x1 * x2 * x2 * (3.3333 * x3 * x3 + 14.9334 * x3 - 43.0934) - 1.508 * x1 * (x6 * x6 + x7 * x7) +
           7.4777 * (x6 * x6 * x6 + x7 * x7 * x7) + 0.7854 * (x4 * x6 * x6 + x5 * x7 * x7);
}

std::vector<ScalarFunction> reducer_constraints()
{
    std::vector<ScalarFunction> g;
    g.emplace_back([](std::span<const double> x) { return 27.0 / (x[0] * x[1] * x[1] * x[2]) - 1.0; });
    g.emplace_back([](std::span<const double> x) { return 397.5 / (x[0] * x[1] * x[1] * x[2] * x[2]) - 1.0; });
    g.emplace_back([](std::span<const double> x) {
        return 1.93 * std::pow(x[3], 3) / (x[1] * x[2] * std::pow(x[5], 4)) - 1.0;
    });
    g.emplace_back([](std::span<const double> x) {
        return 1.93 * std::pow(x[4], 3) / (x[1] * x[2] * std::pow(x[6], 4)) - 1.0;
    });
    g.emplace_back([](std::span<const double> x) {
        const double a = 745.0 * x[3] / (x[1] * x[2]);
        return std::sqrt(a * a + 16.9e6) / (110.0 * std::pow(x[5], 3)) - 1.0;
    });
    g.emplace_back([](std::span<const double> x) {
        const double a = 745.0 * x[4] / (x[1] * x[2]);
        return std::sqrt(a * a + 157.5e6) / (85.0 * std::pow(x[6], 3)) - 1.0;
    });
    g.emplace_back([](std::span<const double> x) { return x[1] * x[2] / 40.0 - 1.0; });
    g.emplace_back([](std::span<const double> x) { return 5.0 * x[1] / x[0] - 1.0; });
    g.emplace_back([](std::span<const double> x) { return x[0] / (12.0 * x[1]) - 1.0; });
    g.emplace_back([](std::span<const double> x) { return (1.5 * x[5] + 1.9) / x[3] - 1.0; });
    g.emplace_back([](std::span<const double> x) { return (1.1 * x[6] + 1.9) / x[4] - 1.0; });
    return g;
}

std::size_t default_dim(std::string_view name)
{
    if (name == "sphere")
        return 16;
    if (name == "shubert")
        return 2;
    return 8;
}

} // namespace

Problem make_test_function(std::string_view name, std::size_t dim)
{
    if (dim < 2)
        throw std::invalid_argument("make_test_function: dimension must be at least 2");

    Problem p;
    p.name = std::string(name) + ":" + std::to_string(dim);
    if (name == "ackley") {
        p.bounds = uniform_box(dim, -32.768, 32.768);
        p.objective = ackley;
        p.known_best_value = 0.0;
        p.known_best_point = Vector(dim, 0.0);
    }
    else if (name == "sphere") {
        p.bounds = uniform_box(dim, -5.12, 5.12);
        p.objective = sphere;
        p.known_best_value = 0.0;
        p.known_best_point = Vector(dim, 0.0);
    }
    else if (name == "rosenbrock") {
        p.bounds = uniform_box(dim, -5.0, 5.0);
        p.objective = rosenbrock;
        p.known_best_value = 0.0;
        p.known_best_point = Vector(dim, 1.0);
    }
    else if (name == "schwefel") {
        p.bounds = uniform_box(dim, -500.0, 500.0);
        p.objective = schwefel;
        p.known_best_value = -418.9829 * static_cast<double>(dim);
        p.known_best_point = Vector(dim, 420.9687);
    }
    else if (name == "shubert") {
        if (dim != 2)
            throw std::invalid_argument("make_test_function: shubert is two-dimensional");
        p.name = "shubert";
        p.bounds = uniform_box(2, -10.0, 10.0);
        p.objective = shubert;
        p.known_best_value = -186.7309;
        // One of the 18 global minimizers.
        p.known_best_point = Vector{-7.70831373, -0.80032110};
    }
    else {
        throw std::invalid_argument("make_test_function: unknown function '" + std::string(name) + "'");
    }
    return p;
}

Problem pressure_vessel(bool quantize_thickness)
{
    Problem p;
    p.name = quantize_thickness ? "pressure_vessel" : "pressure_vessel_continuous";
    p.bounds = Box{{0.0625, 0.0625, 10.0, 10.0}, {99 * 0.0625, 99 * 0.0625, 200.0, 200.0}};
    p.objective = vessel_cost;
    p.constraints.emplace_back([](std::span<const double> x) { return -x[0] + 0.0193 * x[2]; });
    p.constraints.emplace_back([](std::span<const double> x) { return -x[1] + 0.00954 * x[2]; });
    p.constraints.emplace_back([](std::span<const double> x) {
        const double r = x[2];
        return -std::numbers::pi * r * r * x[3] - 4.0 * std::numbers::pi / 3.0 * r * r * r + 1296000.0;
    });
    p.constraints.emplace_back([](std::span<const double> x) { return x[3] - 240.0; });
    p.integer_mask = std::vector<bool>(4, false);
    if (quantize_thickness) {
        p.quantization = {0.0625, 0.0625, 0.0, 0.0};
        // g1 and g3 active: r = d1 / 0.0193, L closes the volume constraint.
        const double r = 0.8125 / 0.0193;
        const double len = (1296000.0 - 4.0 * std::numbers::pi / 3.0 * r * r * r) / (std::numbers::pi * r * r);
        p.known_best_point = Vector{0.8125, 0.4375, r, len};
        p.known_best_value = 6059.714;
    }
    else {
        // L at its upper bound, g1..g3 active; bisect the volume equation for r.
        const double len = 200.0;
        auto volume_gap = [&](double r) {
            return std::numbers::pi * r * r * len + 4.0 * std::numbers::pi / 3.0 * r * r * r - 1296000.0;
        };
        double lo = 10.0, hi = 200.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (volume_gap(mid) < 0.0 ? lo : hi) = mid;
        }
        const double r = hi;
        p.known_best_point = Vector{0.0193 * r, 0.00954 * r, r, len};
        p.known_best_value = vessel_cost(*p.known_best_point);
    }
    return p;
}

Problem speed_reducer()
{
    Problem p;
    p.name = "speed_reducer";
    p.bounds = Box{{2.6, 0.7, 17.0, 7.3, 7.8, 2.9, 5.0}, {3.6, 0.8, 28.0, 8.3, 8.4, 3.9, 5.5}};
    p.objective = reducer_weight;
    p.constraints = reducer_constraints();
    p.integer_mask = {false, false, true, false, false, false, false};
    p.known_best_value = 2996.348165;
    p.known_best_point = Vector{3.5, 0.7, 17.0, 7.3, 7.8, 3.350214, 5.286683};
    return p;
}

Problem make_problem(std::string_view id)
{
    if (id == "pressure_vessel")
        return pressure_vessel(true);
    if (id == "pressure_vessel_continuous")
        return pressure_vessel(false);
    if (id == "speed_reducer")
        return speed_reducer();

    const auto colon = id.find(':');
    const std::string_view name = id.substr(0, colon);
    std::size_t dim = default_dim(name);
    if (colon != std::string_view::npos) {
        const std::string_view digits = id.substr(colon + 1);
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), dim);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty())
            throw std::invalid_argument("make_problem: bad dimension in '" + std::string(id) + "'");
    }
    return make_test_function(name, dim);
}

std::vector<std::string> problem_ids()
{
    return {"ackley:8", "sphere:16", "rosenbrock:8", "schwefel:8", "shubert", "pressure_vessel", "speed_reducer"};
}

} // namespace eagle
