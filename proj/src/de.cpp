#include "eagle/de.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace eagle {

RunResult result_from(const Evaluator& evaluator)
{
    RunResult r;
    r.best_point = evaluator.best_point();
    r.best_value = evaluator.best().penalized;
    r.best_raw = evaluator.best().raw;
    r.feasible = evaluator.best().feasible;
    r.evals_used = evaluator.count();
    r.trace = evaluator.trace();
    return r;
}

std::size_t DeConfig::default_population(std::size_t dim) noexcept
{
    return std::clamp<std::size_t>(10 * dim, 4, 50);
}

void DeConfig::validate(std::size_t dim) const
{
    if (population_for(dim) < 4)
        throw std::invalid_argument("DeConfig: population size must be at least 4, got " +
                                    std::to_string(population_for(dim)));
    if (!(f >= 0.0 && f <= 2.0))
        throw std::invalid_argument("DeConfig: differential weight must lie in [0, 2]");
    if (!(cr >= 0.0 && cr <= 1.0))
        throw std::invalid_argument("DeConfig: crossover probability must lie in [0, 1]");
}

void Population::refresh_best()
{
    best_index = 0;
    for (std::size_t i = 1; i < fitness.size(); ++i)
        if (fitness[i] < fitness[best_index])
            best_index = i;
}

Population init_population(Evaluator& evaluator, const DeConfig& cfg, const std::optional<Box>& region, Rng& rng,
                           const std::optional<Vector>& seed_point)
{
    const Problem& problem = evaluator.problem();
    cfg.validate(problem.dim());

    Population pop;
    pop.box = region ? region->intersect(problem.bounds) : problem.bounds;
    if (pop.box.empty())
        throw std::invalid_argument("init_population: search region does not intersect the problem bounds");

    const std::size_t n = cfg.population_for(problem.dim());
    pop.members.resize(n, Vector(problem.dim()));
    for (auto& m : pop.members)
        for (std::size_t j = 0; j < m.size(); ++j)
            m[j] = rng.uniform(pop.box.lower[j], pop.box.upper[j]);
    if (seed_point) {
        if (seed_point->size() != problem.dim())
            throw std::invalid_argument("init_population: seed point dimension mismatch");
        pop.members[0] = *seed_point;
        correct_bounds(pop.members[0], pop.box, BoundsMode::clamp);
    }

    pop.fitness.resize(n);
    pop.evaluations.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        pop.evaluations[i] = evaluator(pop.members[i]);
        pop.fitness[i] = pop.evaluations[i].penalized;
    }
    pop.evals_used = n;
    pop.refresh_best();
    return pop;
}

std::array<std::size_t, 3> pick_distinct(std::size_t n, std::size_t i, Rng& rng)
{
    if (n < 4)
        throw std::logic_error("DE/rand/1 needs a population of at least 4");
    std::array<std::size_t, 3> idx{};
    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t c;
        do {
            c = rng.index(n);
        } while (c == i || std::find(idx.begin(), idx.begin() + k, c) != idx.begin() + k);
        idx[k] = c;
    }
    return idx;
}

Vector mutate_rand1(const Population& pop, std::array<std::size_t, 3> pqr, double f)
{
    const Vector& xp = pop.members[pqr[0]];
    const Vector& xq = pop.members[pqr[1]];
    const Vector& xr = pop.members[pqr[2]];
    Vector donor(xp.size());
    for (std::size_t j = 0; j < donor.size(); ++j)
        donor[j] = xp[j] + f * (xq[j] - xr[j]);
    return donor;
}

Vector mutate_rand1(const Population& pop, std::size_t i, double f, Rng& rng)
{
    return mutate_rand1(pop, pick_distinct(pop.size(), i, rng), f);
}

Vector crossover_binomial(std::span<const double> target, std::span<const double> donor, double cr, Rng& rng)
{
    if (target.size() != donor.size())
        throw std::invalid_argument("crossover_binomial: length mismatch");
    const std::size_t forced = rng.index(target.size());
    Vector trial(target.begin(), target.end());
    for (std::size_t j = 0; j < trial.size(); ++j)
        if (j == forced || rng.uniform01() <= cr)
            trial[j] = donor[j];
    return trial;
}

void correct_bounds(Vector& x, const Box& box, BoundsMode mode)
{
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double lo = box.lower[j], hi = box.upper[j];
        if (mode == BoundsMode::reflect) {
            if (x[j] < lo)
                x[j] = lo + (lo - x[j]);
            else if (x[j] > hi)
                x[j] = hi - (x[j] - hi);
        }
        x[j] = std::clamp(x[j], lo, hi);
    }
}

void de_step(Population& pop, Evaluator& evaluator, const DeConfig& cfg, Rng& rng)
{
    const std::size_t n = pop.size();
    std::vector<Vector> trials;
    std::vector<Evaluation> trial_evals;
    trials.reserve(n);
    trial_evals.reserve(n);

    for (std::size_t i = 0; i < n && pop.evals_used < cfg.max_evals; ++i) {
        const Vector donor = mutate_rand1(pop, i, cfg.f, rng);
        Vector trial = crossover_binomial(pop.members[i], donor, cfg.cr, rng);
        correct_bounds(trial, pop.box, cfg.bounds_mode);
        trial_evals.push_back(evaluator(trial));
        trials.push_back(std::move(trial));
        ++pop.evals_used;
    }

    for (std::size_t i = 0; i < trials.size(); ++i) {
        if (select(pop.fitness[i], trial_evals[i].penalized)) {
            pop.members[i] = std::move(trials[i]);
            pop.fitness[i] = trial_evals[i].penalized;
            pop.evaluations[i] = std::move(trial_evals[i]);
        }
    }
    pop.refresh_best();
}

double population_spread(const Population& pop, const Problem& problem)
{
    const Box& bounds = problem.bounds;
    const Vector best = problem.snap(pop.best());
    double spread = 0.0;
    for (const auto& m : pop.members) {
        const Vector x = problem.snap(m);
        for (std::size_t j = 0; j < x.size(); ++j)
            spread = std::max(spread, std::abs(x[j] - best[j]) / (bounds.upper[j] - bounds.lower[j]));
    }
    return spread;
}

namespace {

bool target_hit(const Evaluator& evaluator, const std::optional<Target>& target)
{
    return target && evaluator.has_best() && target->reached(evaluator.best().penalized, evaluator.best().feasible);
}

} // namespace

Population minimize_de(Evaluator& evaluator, const DeConfig& cfg, const std::optional<Box>& region, Rng& rng,
                       const std::optional<Vector>& seed_point)
{
    Population pop = init_population(evaluator, cfg, region, rng, seed_point);
    std::size_t stalled = 0;
    while (pop.evals_used < cfg.max_evals && !target_hit(evaluator, cfg.target)) {
        const double before = pop.best_fitness();
        de_step(pop, evaluator, cfg, rng);
        const double margin = cfg.stall_tol * std::max(1.0, std::abs(before));
        stalled = pop.best_fitness() < before - margin ? 0 : stalled + 1;
        if (cfg.stall_generations != 0 && stalled >= cfg.stall_generations)
            break;
        if (cfg.collapse_tol > 0.0 && population_spread(pop, evaluator.problem()) <= cfg.collapse_tol)
            break;
    }
    return pop;
}

RunResult run_de(const Problem& problem, const DeConfig& cfg, const PenaltyConfig& penalty, Rng& rng)
{
    problem.validate();
    Evaluator evaluator(problem, penalty);
    minimize_de(evaluator, cfg, std::nullopt, rng);
    return result_from(evaluator);
}

} // namespace eagle
