#include "fatune/firefly.hpp"

#include "fatune/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace fatune {

void FaConfig::validate() const {
    if (!(theta > 0.0 && theta < 1.0)) throw InvalidArgument("firefly: theta must lie in (0, 1)");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidArgument("firefly: beta must be >= 0");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidArgument("firefly: gamma must be >= 0");
    if (!(alpha0 >= 0.0) || !std::isfinite(alpha0)) throw InvalidArgument("firefly: alpha0 must be >= 0");
    if (population_size < 2) throw InvalidArgument("firefly: population_size must be at least 2");
    if (max_iterations < 1) throw InvalidArgument("firefly: max_iterations must be at least 1");
    penalty.validate();
}

namespace {

double evaluate(const Problem& problem, std::span<const double> x, const PenaltyConfig& penalty) {
    const double v = problem.penalized_unchecked(x, penalty);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

void update_best(FireflyState& state) {
    for (std::size_t i = 0; i < state.population; ++i) {
        if (state.fitness[i] < state.best_value) {
            state.best_value = state.fitness[i];
            auto x = state.position(i);
            state.best_point.assign(x.begin(), x.end());
        }
    }
}

} // namespace

FireflyState init_population(const Problem& problem, const FaConfig& config, RandomStream& stream) {
    config.validate();
    const std::size_t n = config.population_size;
    const std::size_t d = problem.dimension();
    const auto lo = problem.lower_bounds();
    const auto hi = problem.upper_bounds();

    FireflyState state;
    state.population = n;
    state.dimension = d;
    state.positions.resize(n * d);
    state.fitness.resize(n);
    state.alpha = config.alpha0;
    for (std::size_t i = 0; i < n; ++i) {
        auto x = state.position(i);
        for (std::size_t k = 0; k < d; ++k) {
            x[k] = lo[k] + stream.uniform() * (hi[k] - lo[k]);
        }
        state.fitness[i] = evaluate(problem, x, config.penalty);
    }
    state.best_value = std::numeric_limits<double>::infinity();
    state.best_point = std::vector<double>(state.position(0).begin(), state.position(0).end());
    update_best(state);
    return state;
}

void step(FireflyState& state, const Problem& problem, const FaConfig& config, RandomStream& stream) {
    const std::size_t n = state.population;
    const std::size_t d = state.dimension;
    if (d != problem.dimension() || state.positions.size() != n * d || state.fitness.size() != n) {
        throw ShapeError("firefly step: state does not match problem");
    }

    const auto lo = problem.lower_bounds();
    const auto hi = problem.upper_bounds();
    std::vector<double> metric(d, 1.0);
    if (config.normalized_distance) {
        for (std::size_t k = 0; k < d; ++k) metric[k] = 1.0 / (hi[k] - lo[k]);
    }

    for (std::size_t i = 0; i < n; ++i) {
        auto xi = state.position(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (!(state.fitness[j] < state.fitness[i])) continue;
            const auto xj = state.position(j);
            double r2 = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double diff = (xi[k] - xj[k]) * metric[k];
                r2 += diff * diff;
            }
            const double attraction = config.beta * std::exp(-config.gamma * r2);
            for (std::size_t k = 0; k < d; ++k) {
                xi[k] += attraction * (xj[k] - xi[k]) + state.alpha * stream.normal();
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        auto x = state.position(i);
        for (std::size_t k = 0; k < d; ++k) {
            x[k] = std::clamp(x[k], lo[k], hi[k]);
        }
        state.fitness[i] = evaluate(problem, x, config.penalty);
    }

    ++state.iteration;
    state.alpha = config.alpha0 * std::pow(config.theta, static_cast<double>(state.iteration));
    update_best(state);
}

RunOutcome optimize(const Problem& problem, const FaConfig& config, RandomStream& stream) {
    FireflyState state = init_population(problem, config, stream);
    RunOutcome out;
    out.history.reserve(config.max_iterations + 1);
    out.history.push_back(state.best_value);
    for (std::size_t t = 0; t < config.max_iterations; ++t) {
        step(state, problem, config, stream);
        out.history.push_back(state.best_value);
    }
    out.best_value = state.best_value;
    out.best_point = std::move(state.best_point);
    out.evaluations = static_cast<std::uint64_t>(config.population_size) * (config.max_iterations + 1);
    return out;
}

RunOutcome optimize(const Problem& problem, const FaConfig& config) {
    RandomStream stream(config.seed);
    return optimize(problem, config, stream);
}

} // namespace fatune
