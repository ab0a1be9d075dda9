#pragma once

#include "fatune/benchmarks.hpp"
#include "fatune/random.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fatune {

/// Control parameters of one firefly run. Randomization strength follows
/// alpha_t = alpha0 * theta^t.
struct FaConfig {
    std::size_t population_size = 20;
    std::size_t max_iterations = 1000;
    double theta = 0.97;
    double beta = 1.0;
    double gamma = 1.0;
    double alpha0 = 1.0;
    std::uint64_t seed = 0;
    PenaltyConfig penalty{};
    /// Measure r_ij in coordinates divided by the bound widths, so gamma is
    /// independent of the problem's scale. When false r_ij is the plain
    /// Euclidean distance in problem coordinates.
    bool normalized_distance = true;

    /// Throws InvalidArgument unless 0 < theta < 1, beta >= 0, gamma >= 0,
    /// alpha0 >= 0, population_size >= 2 and max_iterations >= 1.
    void validate() const;
};

/// Population snapshot. Positions are stored row-major, one firefly per row.
struct FireflyState {
    std::size_t population = 0;
    std::size_t dimension = 0;
    std::vector<double> positions;
    std::vector<double> fitness;
    std::size_t iteration = 0;
    double alpha = 0.0;
    std::vector<double> best_point;
    double best_value = 0.0;

    std::span<double> position(std::size_t i) { return {positions.data() + i * dimension, dimension}; }
    std::span<const double> position(std::size_t i) const { return {positions.data() + i * dimension, dimension}; }
};

struct RunOutcome {
    double best_value = 0.0;
    std::vector<double> best_point;
    /// history[t] is the best penalized value after t completed iterations;
    /// history[0] is the best of the initial population.
    std::vector<double> history;
    std::uint64_t evaluations = 0;
};

/// Uniform positions in the bound box, evaluated with the penalized objective.
FireflyState init_population(const Problem& problem, const FaConfig& config, RandomStream& stream);

/// One iteration of the attraction sweep.
///
/// For each ordered pair (i, j) with fitness[j] < fitness[i], using the
/// fitness from the start of the iteration, firefly i moves in place:
///
///     x_i += beta * exp(-gamma * r_ij^2) * (x_j - x_i) + alpha * eps
///
/// where r_ij is the distance between the current (possibly already moved)
/// positions (see FaConfig::normalized_distance) and eps holds dimension() standard normal draws
/// taken in coordinate order. Afterwards positions are clamped to the box,
/// fitness is re-evaluated, alpha decays by theta and the incumbent is
/// replaced only by a strictly better value.
void step(FireflyState& state, const Problem& problem, const FaConfig& config, RandomStream& stream);

/// init_population followed by max_iterations steps.
RunOutcome optimize(const Problem& problem, const FaConfig& config, RandomStream& stream);

/// Same as above with a stream seeded from config.seed.
RunOutcome optimize(const Problem& problem, const FaConfig& config);

} // namespace fatune
