#include "eagle/eagle_strategy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eagle {

EsConfig EsConfig::resolved(std::size_t dim) const
{
    EsConfig out = *this;
    if (out.local_de.n == 0)
        out.local_de.n = std::clamp<std::size_t>(4 * dim, 12, 16);
    if (out.local_de.max_evals == 0)
        out.local_de.max_evals = 2000 * dim;
    out.local_de.target = target;
    return out;
}

void EsConfig::validate(std::size_t dim) const
{
    const EsConfig r = resolved(dim);
    if (r.scouts < 1)
        throw std::invalid_argument("EsConfig: scouts must be at least 1");
    r.levy.validate();
    r.local_de.validate(dim);
    if (!(region_radius > 0.0 && region_radius <= 1.0))
        throw std::invalid_argument("EsConfig: region_radius must lie in (0, 1]");
    if (!(radius_decay > 0.0 && radius_decay <= 1.0))
        throw std::invalid_argument("EsConfig: radius_decay must lie in (0, 1]");
    if (!(alternate_cr >= 0.0 && alternate_cr <= 1.0))
        throw std::invalid_argument("EsConfig: alternate_cr must lie in [0, 1]");
    if (!(min_radius >= 0.0) || !(improvement_tol >= 0.0))
        throw std::invalid_argument("EsConfig: min_radius and improvement_tol must be non-negative");
}

std::vector<Candidate> global_explore(Evaluator& evaluator, std::span<const double> anchor, const EsConfig& cfg,
                                      Rng& rng, std::size_t max_probes)
{
    const Box& bounds = evaluator.problem().bounds;
    if (!bounds.contains(anchor))
        throw std::invalid_argument("global_explore: anchor outside the bounds");
    const Vector width = bounds.width();

    std::vector<Candidate> probes;
    const std::size_t count = std::min(cfg.scouts, max_probes);
    probes.reserve(count);
    Vector position(anchor.begin(), anchor.end());
    for (std::size_t k = 0; k < count; ++k) {
        const Vector step = levy_step(rng, cfg.levy, position.size());
        for (std::size_t j = 0; j < position.size(); ++j)
            position[j] += step[j] * width[j];
        correct_bounds(position, bounds, BoundsMode::clamp);
        probes.push_back({position, evaluator(position)});
    }
    return probes;
}

const Candidate& select_promising(std::span<const Candidate> probes, const Candidate& incumbent)
{
    if (probes.empty())
        throw std::invalid_argument("select_promising: no probes");
    const Candidate* best = &incumbent;
    for (const auto& p : probes)
        if (p.eval.penalized < best->eval.penalized)
            best = &p;
    return *best;
}

LocalResult local_search(Evaluator& evaluator, std::span<const double> center, double radius_frac,
                         const EsConfig& cfg, Rng& rng, std::size_t budget)
{
    if (!(radius_frac > 0.0 && radius_frac <= 1.0))
        throw std::invalid_argument("local_search: radius fraction must lie in (0, 1]");
    const Problem& problem = evaluator.problem();
    DeConfig de = cfg.resolved(problem.dim()).local_de;
    de.max_evals = std::min(de.max_evals, budget);

    LocalResult out;
    out.region = Box::around(center, radius_frac, problem.bounds);
    const std::size_t before = evaluator.count();
    const Population pop = minimize_de(evaluator, de, out.region, rng, Vector(center.begin(), center.end()));
    out.evals = evaluator.count() - before;
    out.best = {pop.best(), pop.evaluations[pop.best_index]};
    return out;
}

namespace {

bool target_hit(const Evaluator& evaluator, const std::optional<Target>& target)
{
    return target && evaluator.has_best() && target->reached(evaluator.best().penalized, evaluator.best().feasible);
}

Vector random_point(const Box& bounds, Rng& rng)
{
    Vector x(bounds.dim());
    for (std::size_t j = 0; j < x.size(); ++j)
        x[j] = rng.uniform(bounds.lower[j], bounds.upper[j]);
    return x;
}

} // namespace

RunResult run_eagle(const Problem& problem, const EsConfig& config, const PenaltyConfig& penalty, Rng& rng)
{
    problem.validate();
    config.validate(problem.dim());
    const EsConfig cfg = config.resolved(problem.dim());
    Evaluator evaluator(problem, penalty);

    // An epoch starts from a fresh uniform anchor with the full radius; the
    // best point of earlier epochs stays recorded in the evaluator.
    Candidate incumbent;
    double radius = cfg.region_radius;
    std::size_t stall = 0;
    bool fresh = true;
    std::size_t epoch = 0;

    std::vector<StageRecord> log;
    while (evaluator.count() < cfg.max_evals && !target_hit(evaluator, cfg.target)) {
        StageRecord rec;
        const std::size_t start = evaluator.count();
        if (fresh) {
            incumbent.point = random_point(problem.bounds, rng);
            incumbent.eval = evaluator(incumbent.point);
            radius = cfg.region_radius;
            stall = 0;
            fresh = false;
            rec.reanchored = true;
            ++epoch;
        }
        rec.radius = radius;

        const auto probes = global_explore(evaluator, incumbent.point, cfg, rng, cfg.max_evals - evaluator.count());
        rec.global_evals = evaluator.count() - start;
        if (probes.empty()) {
            log.push_back(rec);
            break;
        }
        const Candidate promising = select_promising(probes, incumbent);

        const std::size_t remaining = cfg.max_evals - evaluator.count();
        if (target_hit(evaluator, cfg.target) || remaining < cfg.local_de.n) {
            log.push_back(rec);
            break;
        }

        EsConfig stage_cfg = cfg;
        if (epoch % 2 == 0)
            stage_cfg.local_de.cr = cfg.alternate_cr;
        const LocalResult local = local_search(evaluator, promising.point, radius, stage_cfg, rng, remaining);
        rec.local_evals = local.evals;
        const Candidate& found = local.best.eval.penalized < promising.eval.penalized ? local.best : promising;

        const double margin = cfg.improvement_tol * std::max(1.0, std::abs(incumbent.eval.penalized));
        if (found.eval.penalized < incumbent.eval.penalized - margin) {
            incumbent = found;
            rec.improved = true;
            stall = 0;
        }
        else {
            ++stall;
        }
        radius *= cfg.radius_decay;
        log.push_back(rec);

        if (stall >= cfg.stall_limit || radius < cfg.min_radius)
            fresh = true;
    }

    RunResult result = result_from(evaluator);
    result.stage_log = std::move(log);
    return result;
}

} // namespace eagle
