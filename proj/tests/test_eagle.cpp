#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "eagle/benchmarks.hpp"
#include "eagle/eagle_strategy.hpp"

using namespace eagle;

namespace {

Candidate cand(Vector x, double f)
{
    Evaluation e;
    e.raw = e.penalized = f;
    return {std::move(x), e};
}

} // namespace

TEST_CASE("config validation and resolved sizes")
{
    CHECK_NOTHROW(EsConfig{}.validate(8));
    const EsConfig r2 = EsConfig{}.resolved(2);
    CHECK(r2.local_de.n == 12);
    CHECK(r2.local_de.max_evals == 4000);
    CHECK(EsConfig{}.resolved(4).local_de.n == 16);
    CHECK(EsConfig{}.resolved(16).local_de.n == 16);

    EsConfig bad;
    bad.scouts = 0;
    CHECK_THROWS_AS(bad.validate(2), std::invalid_argument);
    bad = EsConfig{};
    bad.region_radius = 0.0;
    CHECK_THROWS_AS(bad.validate(2), std::invalid_argument);
    bad.region_radius = 1.5;
    CHECK_THROWS_AS(bad.validate(2), std::invalid_argument);
    bad = EsConfig{};
    bad.radius_decay = 0.0;
    CHECK_THROWS_AS(bad.validate(2), std::invalid_argument);
    bad = EsConfig{};
    bad.local_de.n = 3;
    CHECK_THROWS_AS(bad.validate(2), std::invalid_argument);
}

TEST_CASE("global_explore: zero step returns the anchor")
{
    const Problem p = make_test_function("sphere", 2);
    Evaluator ev(p, PenaltyConfig{});
    EsConfig cfg;
    cfg.scouts = 1;
    cfg.levy.step_scale = 0.0;
    Rng rng(1);
    const auto probes = global_explore(ev, Vector{1.5, -2.0}, cfg, rng, 100);
    REQUIRE(probes.size() == 1);
    CHECK(probes[0].point == Vector{1.5, -2.0});
    CHECK(ev.count() == 1);
}

TEST_CASE("global_explore: probe count, budget cap and anchor check")
{
    const Problem p = make_test_function("sphere", 3);
    Evaluator ev(p, PenaltyConfig{});
    EsConfig cfg;
    Rng rng(2);
    CHECK(global_explore(ev, Vector(3, 0.0), cfg, rng, 100).size() == cfg.scouts);
    CHECK(global_explore(ev, Vector(3, 0.0), cfg, rng, 7).size() == 7);
    CHECK(ev.count() == cfg.scouts + 7);
    CHECK_THROWS_AS(global_explore(ev, Vector(3, 6.0), cfg, rng, 10), std::invalid_argument);
}

TEST_CASE("global_explore: from a corner some probe beats the anchor")
{
    const Problem p = make_test_function("sphere", 2);
    EsConfig cfg;
    cfg.scouts = 50;
    int ok = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        Evaluator ev(p, PenaltyConfig{});
        Rng rng(mix_seed(3, s));
        const Vector corner{5.12, 5.12};
        const double f0 = evaluate(p, corner, PenaltyConfig{}).penalized;
        const auto probes = global_explore(ev, corner, cfg, rng, 50);
        bool better = false;
        for (const auto& c : probes)
            better = better || c.eval.penalized < f0;
        ok += better;
    }
    CHECK(ok >= 90);
}

TEST_CASE("select_promising rules")
{
    const Candidate inc = cand({0}, 5.0);
    std::vector<Candidate> worse{cand({1}, 6.0), cand({2}, 7.0)};
    CHECK(&select_promising(worse, inc) == &inc);

    std::vector<Candidate> one{cand({1}, 6.0), cand({2}, 4.0), cand({3}, 9.0)};
    CHECK(select_promising(one, inc).point == Vector{2});

    std::vector<Candidate> tie{cand({1}, 6.0), cand({2}, 3.0), cand({3}, 3.0)};
    CHECK(&select_promising(tie, inc) == &tie[1]);

    std::vector<Candidate> equal{cand({1}, 5.0)};
    CHECK(&select_promising(equal, inc) == &inc);

    CHECK_THROWS_AS(select_promising(std::vector<Candidate>{}, inc), std::invalid_argument);
}

TEST_CASE("local_search: full radius matches a seeded global DE run")
{
    const Problem p = make_test_function("rosenbrock", 3);
    EsConfig cfg;
    const Vector center{1.0, -2.0, 0.5};

    Evaluator e1(p, PenaltyConfig{});
    Rng r1(4);
    const LocalResult local = local_search(e1, center, 1.0, cfg, r1, 3000);

    Evaluator e2(p, PenaltyConfig{});
    Rng r2(4);
    DeConfig de = cfg.resolved(3).local_de;
    de.max_evals = 3000;
    const Population pop = minimize_de(e2, de, std::nullopt, r2, center);

    CHECK(local.region.lower == p.bounds.lower);
    CHECK(local.region.upper == p.bounds.upper);
    CHECK(local.best.point == pop.best());
    CHECK(local.evals == e2.count());
}

TEST_CASE("local_search: small box around a near-optimal center")
{
    // Small population, no stall stop: the default stage is sized for
    // rugged landscapes and converges more slowly on a bowl.
    const Problem p = make_test_function("sphere", 8);
    EsConfig cfg;
    cfg.local_de.n = 12;
    cfg.local_de.stall_generations = 0;
    int ok = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        Rng rng(mix_seed(5, s));
        Vector center(8);
        for (double& c : center)
            c = rng.uniform(-0.5 / std::sqrt(8.0), 0.5 / std::sqrt(8.0));
        Evaluator ev(p, PenaltyConfig{});
        const LocalResult r = local_search(ev, center, 0.2, cfg, rng, 2000);
        CHECK(r.evals <= 2000);
        CHECK(r.region.contains(r.best.point));
        ok += r.best.eval.penalized < 1e-4;
    }
    CHECK(ok >= 18);
}

TEST_CASE("local_search: radius outside (0, 1]")
{
    const Problem p = make_test_function("sphere", 2);
    Evaluator ev(p, PenaltyConfig{});
    Rng rng(6);
    CHECK_THROWS_AS(local_search(ev, Vector{0, 0}, 0.0, EsConfig{}, rng, 100), std::invalid_argument);
    CHECK_THROWS_AS(local_search(ev, Vector{0, 0}, 1.1, EsConfig{}, rng, 100), std::invalid_argument);
}

TEST_CASE("run_eagle: ackley d=8 reaches 1e-3")
{
    const Problem p = make_test_function("ackley", 8);
    int ok = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        Rng rng(mix_seed(42, s));
        EsConfig cfg;
        cfg.target = Target{0.0, 1e-3};
        const RunResult r = run_eagle(p, cfg, PenaltyConfig{}, rng);
        ok += r.best_value < 1e-3;
    }
    CHECK(ok >= 18);
}

TEST_CASE("run_eagle: target above the initial best stops after the first global stage")
{
    const Problem p = make_test_function("sphere", 4);
    EsConfig cfg;
    cfg.target = Target{1e9, 0.0};
    Rng rng(7);
    const RunResult r = run_eagle(p, cfg, PenaltyConfig{}, rng);
    CHECK(r.evals_used <= 1 + cfg.scouts);
    REQUIRE(r.stage_log.size() == 1);
    CHECK(r.stage_log[0].local_evals == 0);
}

TEST_CASE("run_eagle: accounting, budget, monotone trace, determinism")
{
    const Problem p = pressure_vessel();
    EsConfig cfg;
    cfg.max_evals = 6000;
    Rng a(8), b(8);
    const RunResult x = run_eagle(p, cfg, PenaltyConfig{}, a);
    const RunResult y = run_eagle(p, cfg, PenaltyConfig{}, b);
    CHECK(x.best_point == y.best_point);
    CHECK(x.best_value == y.best_value);
    CHECK(x.trace.size() == y.trace.size());

    std::size_t total = 0;
    for (const auto& s : x.stage_log)
        total += s.global_evals + s.local_evals;
    CHECK(total == x.evals_used);
    CHECK(x.evals_used <= cfg.max_evals);
    for (std::size_t k = 1; k < x.trace.size(); ++k)
        CHECK(x.trace[k].best < x.trace[k - 1].best);
    if (x.feasible)
        CHECK(x.best_value == x.best_raw);
}

TEST_CASE("run_eagle: radius shrinks geometrically within an epoch")
{
    const Problem p = make_test_function("schwefel", 4);
    EsConfig cfg;
    cfg.max_evals = 40000;
    Rng rng(9);
    const RunResult r = run_eagle(p, cfg, PenaltyConfig{}, rng);
    REQUIRE(!r.stage_log.empty());
    CHECK(r.stage_log[0].reanchored);
    double expected = cfg.region_radius;
    for (const auto& s : r.stage_log) {
        if (s.reanchored)
            expected = cfg.region_radius;
        CHECK(s.radius == doctest::Approx(expected).epsilon(1e-12));
        expected *= cfg.radius_decay;
    }
}

TEST_CASE("run_eagle: schwefel succeeds where the landscape is deceptive")
{
    const Problem p = make_test_function("schwefel", 8);
    int ok = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        Rng rng(mix_seed(42, s));
        EsConfig cfg;
        cfg.target = Target{*p.known_best_value, 1e-3};
        ok += run_eagle(p, cfg, PenaltyConfig{}, rng).best_value <= *p.known_best_value + 1e-3;
    }
    CHECK(ok >= 8);
}
