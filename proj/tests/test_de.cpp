#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "eagle/benchmarks.hpp"
#include "eagle/de.hpp"

using namespace eagle;

namespace {

Problem unit_box(std::size_t d)
{
    Problem p = make_test_function("sphere", d);
    p.bounds = Box{Vector(d, 0.0), Vector(d, 1.0)};
    return p;
}

Population manual(std::vector<Vector> members)
{
    Population pop;
    pop.members = std::move(members);
    pop.fitness.assign(pop.members.size(), 0.0);
    pop.evaluations.assign(pop.members.size(), Evaluation{});
    return pop;
}

} // namespace

TEST_CASE("config validation and default population")
{
    CHECK(DeConfig::default_population(2) == 20);
    CHECK(DeConfig::default_population(4) == 40);
    CHECK(DeConfig::default_population(8) == 50);
    CHECK(DeConfig{}.population_for(16) == 50);
    CHECK_NOTHROW(DeConfig{}.validate(3));
    CHECK_THROWS_AS((DeConfig{3}).validate(3), std::invalid_argument);
    CHECK_THROWS_AS((DeConfig{10, 2.5}).validate(3), std::invalid_argument);
    CHECK_THROWS_AS((DeConfig{10, -0.1}).validate(3), std::invalid_argument);
    CHECK_THROWS_AS((DeConfig{10, 0.5, 1.5}).validate(3), std::invalid_argument);
    CHECK_NOTHROW((DeConfig{4, 2.0, 0.0}).validate(3));
}

TEST_CASE("init_population: unit box")
{
    const Problem p = unit_box(2);
    Evaluator ev(p, PenaltyConfig{});
    Rng rng(1);
    const Population pop = init_population(ev, DeConfig{4}, std::nullopt, rng);
    CHECK(pop.size() == 4);
    CHECK(pop.evals_used == 4);
    CHECK(ev.count() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (double v : pop.members[i]) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        CHECK(pop.fitness[i] == pop.evaluations[i].penalized);
        CHECK(pop.fitness[i] == evaluate(p, pop.members[i], PenaltyConfig{}).penalized);
    }
    CHECK(pop.best_fitness() == *std::min_element(pop.fitness.begin(), pop.fitness.end()));
}

TEST_CASE("init_population: degenerate region and empty intersection")
{
    const Problem p = unit_box(2);
    Evaluator ev(p, PenaltyConfig{});
    Rng rng(2);
    const Box point{{0.25, 0.75}, {0.25, 0.75}};
    const Population pop = init_population(ev, DeConfig{5}, point, rng);
    for (const auto& m : pop.members)
        CHECK(m == Vector{0.25, 0.75});
    CHECK_THROWS_AS(init_population(ev, DeConfig{5}, Box{{2, 2}, {3, 3}}, rng), std::invalid_argument);
}

TEST_CASE("init_population: same seed, same population; seed point replaces member 0")
{
    const Problem p = unit_box(3);
    Evaluator e1(p, PenaltyConfig{}), e2(p, PenaltyConfig{});
    Rng a(7), b(7);
    const Population x = init_population(e1, DeConfig{6}, std::nullopt, a);
    const Population y = init_population(e2, DeConfig{6}, std::nullopt, b, Vector{0.5, 0.5, 2.0});
    CHECK(y.members[0] == Vector{0.5, 0.5, 1.0});
    Evaluator e3(p, PenaltyConfig{});
    Rng c(7);
    const Population z = init_population(e3, DeConfig{6}, std::nullopt, c);
    CHECK(x.members == z.members);
    CHECK(x.fitness == z.fitness);
}

TEST_CASE("best index ties go to the lowest index")
{
    Population pop = manual({{1}, {2}, {3}, {4}});
    pop.fitness = {3.0, 1.0, 1.0, 2.0};
    pop.refresh_best();
    CHECK(pop.best_index == 1);
}

TEST_CASE("mutate_rand1: hand arithmetic")
{
    Population pop = manual({{9, 9}, {1, 2}, {3, 4}, {0, 1}});
    CHECK(mutate_rand1(pop, {1, 2, 3}, 0.5) == Vector{2.5, 3.5});
}

TEST_CASE("mutate_rand1: F = 0 and equal difference vectors give x_p")
{
    Population pop = manual({{1, 1}, {2, 5}, {7, 3}, {7, 3}, {0, 8}});
    CHECK(mutate_rand1(pop, {1, 2, 4}, 0.0) == Vector{2, 5});
    for (double f : {0.3, 1.0, 2.0})
        CHECK(mutate_rand1(pop, {1, 2, 3}, f) == Vector{2, 5});
}

TEST_CASE("mutate_rand1: population too small")
{
    Population pop = manual({{1}, {2}, {3}});
    Rng rng(1);
    CHECK_THROWS_AS(mutate_rand1(pop, 0, 0.5, rng), std::logic_error);
    CHECK_THROWS_AS(pick_distinct(3, 0, rng), std::logic_error);
}

TEST_CASE("pick_distinct covers every admissible index")
{
    Rng rng(3);
    std::vector<int> hits(6, 0);
    for (int t = 0; t < 6000; ++t) {
        const auto pqr = pick_distinct(6, 2, rng);
        for (std::size_t k : pqr)
            ++hits[k];
    }
    CHECK(hits[2] == 0);
    for (std::size_t k : {0u, 1u, 3u, 4u, 5u})
        CHECK(std::abs(hits[k] - 3600) < 300);
}

TEST_CASE("crossover_binomial rules")
{
    Rng rng(4);
    const Vector target{1, 2, 3, 4, 5};
    const Vector donor{10, 20, 30, 40, 50};
    CHECK(crossover_binomial(target, donor, 1.0, rng) == donor);
    for (int t = 0; t < 200; ++t) {
        const Vector trial = crossover_binomial(target, donor, 0.0, rng);
        int changed = 0;
        for (std::size_t j = 0; j < 5; ++j)
            changed += trial[j] != target[j];
        CHECK(changed == 1);
    }
    for (double cr : {0.0, 0.4, 1.0})
        CHECK(crossover_binomial(target, target, cr, rng) == target);
    CHECK_THROWS_AS(crossover_binomial(target, Vector{1, 2}, 0.5, rng), std::invalid_argument);
}

TEST_CASE("select keeps the trial on ties")
{
    CHECK(select(5.0, 3.0));
    CHECK_FALSE(select(3.0, 5.0));
    CHECK(select(4.0, 4.0));
    CHECK_FALSE(select(1.0, std::numeric_limits<double>::infinity()));
}

TEST_CASE("tie replacement leaves the best value unchanged")
{
    Problem flat = unit_box(2);
    flat.objective = [](std::span<const double>) { return 4.0; };
    Evaluator ev(flat, PenaltyConfig{});
    Rng rng(5);
    DeConfig cfg{6, 0.5, 0.9, 1000};
    Population pop = init_population(ev, cfg, std::nullopt, rng);
    const Population before = pop;
    de_step(pop, ev, cfg, rng);
    CHECK(pop.best_fitness() == 4.0);
    // Every trial tied, so every member was replaced.
    for (std::size_t i = 0; i < pop.size(); ++i)
        CHECK(pop.members[i] != before.members[i]);
}

TEST_CASE("correct_bounds clamp and reflect")
{
    const Box b{{0, 0}, {1, 1}};
    Vector x{-0.25, 1.5};
    correct_bounds(x, b, BoundsMode::clamp);
    CHECK(x == Vector{0, 1});
    Vector y{-0.25, 1.5};
    correct_bounds(y, b, BoundsMode::reflect);
    CHECK(y == Vector{0.25, 0.5});
    Vector z{-5.0, 9.0};
    correct_bounds(z, b, BoundsMode::reflect);
    CHECK(z == Vector{1, 0});
}

TEST_CASE("de_step: fixed point of identical members with F = 0, Cr = 0")
{
    const Problem p = unit_box(3);
    Evaluator ev(p, PenaltyConfig{});
    Rng rng(6);
    DeConfig cfg{5, 0.0, 0.0, 1000};
    Population pop = init_population(ev, cfg, Box{{0.3, 0.3, 0.3}, {0.3, 0.3, 0.3}}, rng);
    pop.box = p.bounds;
    const auto members = pop.members;
    for (int g = 0; g < 10; ++g)
        de_step(pop, ev, cfg, rng);
    CHECK(pop.members == members);
}

TEST_CASE("de_step: accounting and truncation at the budget")
{
    const Problem p = make_test_function("sphere", 2);
    Evaluator ev(p, PenaltyConfig{});
    Rng rng(7);
    DeConfig cfg{8, 0.7, 0.9, 100000};
    Population pop = init_population(ev, cfg, std::nullopt, rng);
    for (std::size_t g = 1; g <= 5; ++g) {
        de_step(pop, ev, cfg, rng);
        CHECK(pop.evals_used == 8 * (g + 1));
        CHECK(ev.count() == pop.evals_used);
    }
    cfg.max_evals = 51;
    de_step(pop, ev, cfg, rng);
    CHECK(pop.evals_used == 51);
    CHECK(ev.count() == 51);
    de_step(pop, ev, cfg, rng);
    CHECK(pop.evals_used == 51);
}

TEST_CASE("de_step: sphere d=2 improves tenfold over the initial median")
{
    const Problem p = make_test_function("sphere", 2);
    Evaluator ev(p, PenaltyConfig{});
    Rng rng(8);
    DeConfig cfg{8, 0.7, 0.9, 100000};
    Population pop = init_population(ev, cfg, std::nullopt, rng);
    Vector f = pop.fitness;
    std::sort(f.begin(), f.end());
    const double median = 0.5 * (f[3] + f[4]);
    double last = pop.best_fitness();
    for (int g = 0; g < 50; ++g) {
        de_step(pop, ev, cfg, rng);
        CHECK(pop.best_fitness() <= last);
        last = pop.best_fitness();
    }
    CHECK(pop.best_fitness() * 10.0 <= median);
}

TEST_CASE("run_de: sphere d=16 reaches 1e-6")
{
    const Problem p = make_test_function("sphere", 16);
    int ok = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        Rng rng(mix_seed(42, s));
        const RunResult r = run_de(p, DeConfig{40, 0.7, 0.9, 100000}, PenaltyConfig{}, rng);
        ok += r.best_value < 1e-6;
        CHECK(r.evals_used == 100000);
    }
    CHECK(ok >= 18);
}

TEST_CASE("run_de: target already met by the initial population")
{
    Problem zero = unit_box(3);
    zero.objective = [](std::span<const double>) { return 0.0; };
    DeConfig cfg{12, 0.7, 0.9, 10000};
    cfg.target = Target{0.0, 1e-6};
    Rng rng(9);
    const RunResult r = run_de(zero, cfg, PenaltyConfig{}, rng);
    CHECK(r.evals_used == 12);
}

TEST_CASE("run_de: determinism and trace")
{
    const Problem p = make_test_function("rosenbrock", 4);
    DeConfig cfg{20, 0.7, 0.9, 5000};
    Rng a(10), b(10);
    const RunResult x = run_de(p, cfg, PenaltyConfig{}, a);
    const RunResult y = run_de(p, cfg, PenaltyConfig{}, b);
    CHECK(x.best_point == y.best_point);
    CHECK(x.best_value == y.best_value);
    CHECK(x.evals_used == y.evals_used);
    REQUIRE(x.trace.size() == y.trace.size());
    for (std::size_t k = 1; k < x.trace.size(); ++k) {
        CHECK(x.trace[k].best < x.trace[k - 1].best);
        CHECK(x.trace[k].evals > x.trace[k - 1].evals);
    }
    CHECK(x.trace.back().best == x.best_value);
    CHECK(x.stage_log.empty());
}

TEST_CASE("run_de: stall and collapse stops")
{
    const Problem p = make_test_function("sphere", 2);
    DeConfig cfg{10, 0.7, 0.9, 100000};
    cfg.stall_generations = 5;
    cfg.stall_tol = 1e-3;
    Rng rng(11);
    const RunResult r = run_de(p, cfg, PenaltyConfig{}, rng);
    CHECK(r.evals_used < 100000);

    DeConfig c2{10, 0.7, 0.9, 100000};
    c2.collapse_tol = 1e-3;
    Rng rng2(11);
    const RunResult r2 = run_de(p, c2, PenaltyConfig{}, rng2);
    CHECK(r2.evals_used < 100000);
    CHECK(r2.best_value < 1e-3);
}

TEST_CASE("population spread is measured on the snapped grid")
{
    const Problem p = pressure_vessel();
    Population pop = manual({{0.81, 0.44, 42, 170}, {0.82, 0.43, 42, 170}, {0.8125, 0.4375, 42, 170},
                             {0.80, 0.45, 42, 170}});
    CHECK(population_spread(pop, p) == 0.0);
}
