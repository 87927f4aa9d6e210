#pragma once

#include <cstddef>
#include <vector>

#include "eagle/problem.hpp"

namespace eagle {

/// Early-stop / success threshold on the best penalized value.
struct Target {
    double value = 0.0;
    double tolerance = 0.0;
    bool require_feasible = false;

    bool reached(double best, bool feasible) const noexcept
    {
        return best <= value + tolerance && (feasible || !require_feasible);
    }
};

/// One outer iteration of the two-stage search.
struct StageRecord {
    std::size_t global_evals = 0;
    std::size_t local_evals = 0;
    double radius = 0.0;
    bool improved = false;
    bool reanchored = false;
};

struct RunResult {
    Vector best_point;
    double best_value = 0.0; ///< penalized
    double best_raw = 0.0;
    bool feasible = false;
    std::size_t evals_used = 0;
    std::vector<TracePoint> trace;
    std::vector<StageRecord> stage_log; ///< empty for pure DE
};

/// Fills the best-so-far fields of a result from a finished evaluator.
RunResult result_from(const Evaluator& evaluator);

} // namespace eagle
