#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eagle/problem.hpp"
#include "eagle/rng.hpp"
#include "eagle/run_result.hpp"

namespace eagle {

enum class BoundsMode { clamp, reflect };

/// DE/rand/1/bin parameters.
struct DeConfig {
    std::size_t n = 0; ///< population size; 0 selects default_population(dim)
    double f = 0.7;    ///< differential weight in [0, 2]
    double cr = 0.9;   ///< crossover probability in [0, 1]
    std::size_t max_evals = 100000;
    std::optional<Target> target;
    BoundsMode bounds_mode = BoundsMode::clamp;
    /// Stop after this many consecutive generations in which the population
    /// best improves by no more than stall_tol * max(1, |best|). 0 disables.
    std::size_t stall_generations = 0;
    double stall_tol = 0.0;
    /// Stop once every member lies within collapse_tol * (bound width) of the
    /// population best in every variable, compared after snapping to the
    /// problem's integer/quantization grid. 0 disables.
    double collapse_tol = 0.0;

    /// Population size actually used for a problem of dimension `dim`.
    std::size_t population_for(std::size_t dim) const noexcept { return n != 0 ? n : default_population(dim); }

    /// 10 * dim, capped at 50, at least 4.
    static std::size_t default_population(std::size_t dim) noexcept;

    /// Throws std::invalid_argument. `dim` resolves an automatic n.
    void validate(std::size_t dim) const;
};

/// Candidate vectors with their penalized fitness, kept in sync.
struct Population {
    std::vector<Vector> members;
    Vector fitness;                       ///< fitness[i] == evaluations[i].penalized
    std::vector<Evaluation> evaluations;
    std::size_t evals_used = 0;
    std::size_t best_index = 0;
    Box box; ///< region every member lives in

    std::size_t size() const noexcept { return members.size(); }
    const Vector& best() const { return members[best_index]; }
    double best_fitness() const { return fitness[best_index]; }
    /// Recomputes best_index (lowest index among ties).
    void refresh_best();
};

/// n members uniform in `region` ∩ problem bounds (the bounds alone when no
/// region is given), all evaluated. When `seed_point` is given it replaces
/// member 0 after being clamped into the box. Throws std::invalid_argument
/// when the effective box is empty.
Population init_population(Evaluator& evaluator, const DeConfig& cfg, const std::optional<Box>& region, Rng& rng,
                           const std::optional<Vector>& seed_point = std::nullopt);

/// Draws three indices pairwise distinct and distinct from `i`.
std::array<std::size_t, 3> pick_distinct(std::size_t n, std::size_t i, Rng& rng);

/// Donor x_p + F (x_q - x_r) for member `i`, no bounds correction.
/// Throws std::logic_error when the population has fewer than 4 members.
Vector mutate_rand1(const Population& pop, std::size_t i, double f, Rng& rng);

/// Donor from explicit indices.
Vector mutate_rand1(const Population& pop, std::array<std::size_t, 3> pqr, double f);

/// Binomial crossover. Component j takes the donor when a uniform draw is
/// <= cr, and one uniformly chosen component always takes the donor.
Vector crossover_binomial(std::span<const double> target, std::span<const double> donor, double cr, Rng& rng);

/// Greedy selection for minimization; ties keep the trial.
inline bool select(double target_fitness, double trial_fitness) noexcept
{
    return trial_fitness <= target_fitness;
}

/// Pulls x back into `box` by clamping or reflecting at the violated bound.
void correct_bounds(Vector& x, const Box& box, BoundsMode mode);

/// One synchronous generation: every member produces a trial, trials are
/// evaluated in index order and replacements applied together at the end.
/// Stops early (keeping replacements for the trials already evaluated) once
/// pop.evals_used reaches cfg.max_evals.
void de_step(Population& pop, Evaluator& evaluator, const DeConfig& cfg, Rng& rng);

/// Largest per-variable distance of a snapped member from the snapped
/// population best, as a fraction of that variable's bound width.
double population_spread(const Population& pop, const Problem& problem);

/// Runs DE inside `region` until pop.evals_used reaches cfg.max_evals, the
/// evaluator's best-so-far meets cfg.target, or one of the stall/collapse
/// rules fires. Returns the final population.
Population minimize_de(Evaluator& evaluator, const DeConfig& cfg, const std::optional<Box>& region, Rng& rng,
                       const std::optional<Vector>& seed_point = std::nullopt);

/// Pure-DE baseline over the full problem bounds.
RunResult run_de(const Problem& problem, const DeConfig& cfg, const PenaltyConfig& penalty, Rng& rng);

} // namespace eagle
