#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "eagle/problem.hpp"

namespace eagle {

/// Shubert's function is fixed to two variables and five terms per factor.
inline constexpr std::size_t shubert_terms = 5;

/// Unconstrained multimodal test functions: "ackley", "sphere",
/// "rosenbrock", "schwefel", "shubert". `dim` must be >= 2; shubert only
/// accepts 2. Throws std::invalid_argument otherwise.
Problem make_test_function(std::string_view name, std::size_t dim);

/// Cylindrical pressure vessel (d1, d2, r, L). Shell thicknesses d1 and d2
/// are quantized to multiples of 0.0625 unless `quantize_thickness` is false.
Problem pressure_vessel(bool quantize_thickness = true);

/// Golinski's speed reducer, 7 variables, x3 (tooth count) integer.
Problem speed_reducer();

/// Lowest speed-reducer value reported for the ES run in the literature this
/// library reproduces. The point violates g5 and g6, so it is kept only for
/// reference and never used as a target.
inline constexpr double speed_reducer_claimed_value = 2993.7495888;
inline constexpr std::array<double, 7> speed_reducer_claimed_point{3.5, 0.7, 17.0, 7.3, 7.8, 3.34336449, 5.285351};

/// Registry lookup: "name[:dim]" for test functions (dimension defaults to
/// the benchmark dimension of each function), "pressure_vessel",
/// "pressure_vessel_continuous", "speed_reducer".
Problem make_problem(std::string_view id);

/// Canonical identifiers accepted by make_problem, with default dimensions.
std::vector<std::string> problem_ids();

} // namespace eagle
