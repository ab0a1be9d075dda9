#include "fatune/error.hpp"
#include "fatune/firefly.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace fatune;

namespace {

bool inside(const Problem& p, std::span<const double> x) {
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] < p.lower_bounds()[k] || x[k] > p.upper_bounds()[k]) return false;
    }
    return true;
}

FaConfig mid_range(std::uint64_t seed, std::size_t iterations = 1000) {
    FaConfig c;
    c.theta = 0.95;
    c.beta = 0.5;
    c.gamma = 1.3;
    c.max_iterations = iterations;
    c.seed = seed;
    return c;
}

} // namespace

TEST(FaConfig, Validation) {
    FaConfig c;
    EXPECT_NO_THROW(c.validate());
    c.theta = 1.0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = {};
    c.theta = 0.0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = {};
    c.beta = -0.1;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = {};
    c.gamma = -1;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = {};
    c.population_size = 1;
    EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(InitPopulation, InsideBoundsDeterministicAndBestIsMinimum) {
    const auto sphere = make_problem("sphere", 2);
    FaConfig cfg;
    RandomStream a(5), b(5);
    const auto s = init_population(sphere, cfg, a);
    const auto t = init_population(sphere, cfg, b);
    EXPECT_EQ(s.positions, t.positions);
    ASSERT_EQ(s.population, 20u);
    for (std::size_t i = 0; i < s.population; ++i) EXPECT_TRUE(inside(sphere, s.position(i)));
    EXPECT_EQ(s.best_value, *std::min_element(s.fitness.begin(), s.fitness.end()));
    EXPECT_EQ(s.iteration, 0u);
    EXPECT_EQ(s.alpha, cfg.alpha0);
}

TEST(Step, NoAttractionNoNoiseIsFixedPoint) {
    const auto p = make_problem("rosenbrock", 3);
    FaConfig cfg;
    cfg.beta = 0.0;
    cfg.alpha0 = 0.0;
    RandomStream s(1);
    auto state = init_population(p, cfg, s);
    const auto before = state.positions;
    for (int t = 0; t < 5; ++t) step(state, p, cfg, s);
    EXPECT_EQ(state.positions, before);
}

TEST(Step, FullAttractionLandsOnBrighterFirefly) {
    const auto p = make_problem("sphere", 2);
    FaConfig cfg;
    cfg.population_size = 2;
    cfg.beta = 1.0;
    cfg.gamma = 0.0;
    cfg.alpha0 = 0.0;
    RandomStream s(2);
    auto state = init_population(p, cfg, s);
    state.positions = {3.0, -4.0, 1.0, 1.0};
    state.fitness = {25.0, 2.0};
    step(state, p, cfg, s);
    EXPECT_EQ(state.position(0)[0], 1.0);
    EXPECT_EQ(state.position(0)[1], 1.0);
    EXPECT_EQ(state.position(1)[0], 1.0);
    EXPECT_EQ(state.position(1)[1], 1.0);
}

TEST(Step, NormalizedDistanceEqualsRescaledGamma) {
    const auto p = make_problem("sphere", 2);
    FaConfig cfg;
    cfg.population_size = 2;
    cfg.beta = 0.8;
    cfg.alpha0 = 0.0;
    RandomStream s(4);
    auto a = init_population(p, cfg, s);
    a.positions = {3.0, -4.0, 1.0, 1.5};
    a.fitness = {25.0, 3.25};
    auto b = a;

    cfg.gamma = 40.0;
    step(a, p, cfg, s);
    cfg.normalized_distance = false;
    cfg.gamma = 40.0 / 400.0;
    step(b, p, cfg, s);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(a.positions[k], b.positions[k], 1e-12);
    EXPECT_NE(a.positions[0], 3.0);
}

TEST(Step, BestNeverGetsWorse) {
    const auto p = make_problem("ackley", 5);
    const auto cfg = mid_range(9);
    RandomStream s(cfg.seed);
    auto state = init_population(p, cfg, s);
    for (int t = 0; t < 50; ++t) {
        const double before = state.best_value;
        step(state, p, cfg, s);
        ASSERT_LE(state.best_value, before);
    }
}

TEST(Step, RejectsMismatchedState) {
    const auto p = make_problem("sphere", 2);
    FaConfig cfg;
    RandomStream s(1);
    auto state = init_population(p, cfg, s);
    EXPECT_THROW(step(state, make_problem("sphere", 3), cfg, s), ShapeError);
}

TEST(Optimize, InvariantsOverSeeds) {
    const auto p = make_problem("rosenbrock", 4);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto cfg = mid_range(seed, 300);
        const auto run = optimize(p, cfg);
        ASSERT_EQ(run.history.size(), cfg.max_iterations + 1);
        for (std::size_t t = 1; t < run.history.size(); ++t) ASSERT_LE(run.history[t], run.history[t - 1]);
        EXPECT_EQ(run.history.back(), run.best_value);
        EXPECT_TRUE(inside(p, run.best_point));
        EXPECT_EQ(run.evaluations, cfg.population_size * (cfg.max_iterations + 1));
        EXPECT_EQ(evaluate_objective(p, run.best_point), run.best_value);
    }
}

TEST(Optimize, AlphaDecaysGeometrically) {
    const auto p = make_problem("sphere", 3);
    auto cfg = mid_range(3);
    cfg.theta = 0.97;
    cfg.alpha0 = 1.0;
    RandomStream s(3);
    auto state = init_population(p, cfg, s);
    for (std::size_t t = 1; t <= 1000; ++t) {
        step(state, p, cfg, s);
        const double expected = std::pow(0.97, static_cast<double>(t));
        ASSERT_LE(std::fabs(state.alpha - expected), 1e-12 * expected) << "t=" << t;
    }
}

TEST(Optimize, BitIdenticalForEqualSeed) {
    const auto p = make_problem("spring");
    const auto cfg = mid_range(17, 200);
    const auto a = optimize(p, cfg);
    const auto b = optimize(p, cfg);
    EXPECT_EQ(a.best_value, b.best_value);
    EXPECT_EQ(a.best_point, b.best_point);
    EXPECT_EQ(a.history, b.history);
}

// With beta = 0 every move is a pure Gaussian kick, so the run must equal a
// hand-written random walk that consumes the stream in the same order.
TEST(Optimize, ZeroAttractionMatchesRandomWalkReference) {
    const auto p = make_problem("sphere", 3);
    FaConfig cfg;
    cfg.population_size = 6;
    cfg.max_iterations = 40;
    cfg.beta = 0.0;
    cfg.theta = 0.9;
    cfg.seed = 12;
    const auto run = optimize(p, cfg);

    RandomStream s(cfg.seed);
    const std::size_t n = cfg.population_size, d = 3;
    std::vector<double> x(n * d), f(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < d; ++k) x[i * d + k] = -10.0 + s.uniform() * 20.0;
    }
    auto sphere = [&](std::size_t i) {
        double v = 0;
        for (std::size_t k = 0; k < d; ++k) v += x[i * d + k] * x[i * d + k];
        return v;
    };
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) best = std::min(best, f[i] = sphere(i));
    double alpha = 1.0;
    for (std::size_t t = 1; t <= cfg.max_iterations; ++t) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (f[j] < f[i])
                    for (std::size_t k = 0; k < d; ++k) x[i * d + k] += alpha * s.normal();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < d; ++k) x[i * d + k] = std::clamp(x[i * d + k], -10.0, 10.0);
            best = std::min(best, f[i] = sphere(i));
        }
        alpha = std::pow(cfg.theta, static_cast<double>(t));
    }
    EXPECT_EQ(run.best_value, best);
}

TEST(Optimize, SphereConvergesAcrossSeeds) {
    const auto p = make_problem("sphere", 10);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        FaConfig cfg;
        cfg.theta = 0.95;
        cfg.beta = 0.7;
        cfg.gamma = 1.0;
        cfg.seed = seed;
        EXPECT_LE(optimize(p, cfg).best_value, 1e-3) << "seed " << seed;
    }
}

TEST(Optimize, TridMidRangeNearOptimum) {
    const auto p = make_problem("trid", 4);
    EXPECT_NEAR(optimize(p, mid_range(2)).best_value, -16.0, 0.5);
}

TEST(Optimize, TrussMidRangeNearLiteratureBest) {
    const auto p = make_problem("truss");
    EXPECT_LE(optimize(p, mid_range(2)).best_value, 264.2);
}
