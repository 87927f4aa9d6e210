#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eagle/de.hpp"
#include "eagle/levy.hpp"
#include "eagle/problem.hpp"
#include "eagle/rng.hpp"
#include "eagle/run_result.hpp"

namespace eagle {

/// Tunables of the two-stage loop.
///
/// The search runs in epochs. An epoch starts from a uniform random anchor
/// with the local radius at region_radius; each outer iteration then runs a
/// Lévy walk from the epoch incumbent, picks the most promising point, and
/// runs DE inside a box around it. The radius shrinks by radius_decay after
/// every iteration. The epoch ends after stall_limit iterations without
/// improvement or once the radius drops below min_radius; the best point of
/// all epochs is kept by the run.
///
/// Local DE sizes left at 0 are resolved from the problem dimension d:
///   local_de.n         -> clamp(4 d, 12, 16)
///   local_de.max_evals -> 2000 d
struct EsConfig {
    std::size_t scouts = 20;
    /// step_scale is a fraction of each variable's bound width.
    LevyConfig levy{1.5, 1.0, 0.05};
    DeConfig local_de{0, 0.8, 0.9, 0, std::nullopt, BoundsMode::clamp, 50, 1e-7, 0.0};
    /// Local crossover probability used by every second epoch. Low values
    /// favour separable landscapes, high values rotated ones.
    double alternate_cr = 0.2;
    double region_radius = 1.0;
    double radius_decay = 0.7;
    double min_radius = 1e-9;
    /// Relative margin a stage must beat the incumbent by to count as an
    /// improvement.
    double improvement_tol = 1e-9;
    std::size_t max_evals = 100000;
    std::optional<Target> target;
    std::size_t stall_limit = 1;

    /// Copy with every automatic size filled in for dimension `dim`.
    EsConfig resolved(std::size_t dim) const;
    void validate(std::size_t dim) const;
};

struct Candidate {
    Vector point;
    Evaluation eval;
};

/// Lévy walk of cfg.scouts probes starting at `anchor`: each probe is the
/// previous position plus a Lévy step scaled per variable by the bound
/// width, clamped to the bounds. Every probe is evaluated. At most
/// `max_probes` probes are produced.
std::vector<Candidate> global_explore(Evaluator& evaluator, std::span<const double> anchor, const EsConfig& cfg,
                                      Rng& rng, std::size_t max_probes);

/// Minimum penalized fitness over probes and incumbent. Ties prefer the
/// incumbent, then the earliest probe. Throws on empty probes.
const Candidate& select_promising(std::span<const Candidate> probes, const Candidate& incumbent);

struct LocalResult {
    Candidate best;
    std::size_t evals = 0;
    Box region;
};

/// DE restricted to center ± radius_frac * width (∩ bounds) with the center
/// seeded as one member. Spends at most `budget` evaluations, the initial
/// population included.
LocalResult local_search(Evaluator& evaluator, std::span<const double> center, double radius_frac,
                         const EsConfig& cfg, Rng& rng, std::size_t budget);

/// Full two-stage run until cfg.max_evals or cfg.target.
RunResult run_eagle(const Problem& problem, const EsConfig& cfg, const PenaltyConfig& penalty, Rng& rng);

} // namespace eagle
