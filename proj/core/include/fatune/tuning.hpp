#pragma once

#include "fatune/benchmarks.hpp"
#include "fatune/firefly.hpp"
#include "fatune/sampling.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fatune {

/// Firefly settings shared by every tuned run; theta, beta and gamma come
/// from the sampler.
struct FaBase {
    std::size_t population_size = 20;
    std::size_t max_iterations = 1000;
    double alpha0 = 1.0;
    bool normalized_distance = true;

    bool operator==(const FaBase&) const = default;
};

/// A catalog name with an optional dimension, written "name" or "name:D".
struct ProblemSpec {
    std::string name;
    std::optional<std::size_t> dimension;

    static ProblemSpec parse(std::string_view text);
    std::string to_string() const;
    bool operator==(const ProblemSpec&) const = default;
};

struct TuningPlan {
    std::vector<SamplerKind> methods{SamplerKind::MC, SamplerKind::QMC, SamplerKind::LHS};
    ParameterRanges ranges{};
    std::size_t num_settings = 10;
    std::size_t calls_per_setting = 50;
    FaBase fa{};
    std::uint64_t master_seed = 1;
    std::vector<ProblemSpec> problems{{"sphere", {}},     {"rosenbrock", {}}, {"ackley", {}},
                                      {"trid", {}},       {"spring", {}},     {"truss", {}}};
    PenaltyConfig penalty{};
    // Draw a fresh parameter pool for every problem instead of sharing one
    // pool per method across all problems.
    bool redraw_per_problem = false;
    bool strict_spring = false;

    /// 10 settings x 50 calls, population 20, 1000 iterations, all six problems.
    static TuningPlan paper();
    /// 5 settings x 10 calls, population 20, 250 iterations, all six problems.
    static TuningPlan desk();

    void validate() const;
    bool operator==(const TuningPlan&) const = default;
};

/// Builds every problem in the plan; throws before any run starts.
std::vector<Problem> build_problems(const TuningPlan& plan);

/// num_settings parameter samples for one method. `problem` is only
/// consulted when the plan redraws per problem.
std::vector<ParameterSample> generate_settings(const TuningPlan& plan, SamplerKind method,
                                               const Problem* problem = nullptr);

struct SettingResult {
    std::size_t setting_index = 0;
    ParameterSample params;
    double best_value = 0.0;
    std::vector<double> best_point;
    std::vector<double> per_call_bests;
};

/// Seed of the stream owning one (method, problem, setting) unit. Call c of
/// that unit runs with derive_seed(setting_seed, {c}).
std::uint64_t setting_seed(const TuningPlan& plan, SamplerKind method, const Problem& problem,
                           std::size_t setting_index);

/// calls_per_setting independent firefly runs with one parameter sample.
SettingResult evaluate_setting(const Problem& problem, const ParameterSample& params, const TuningPlan& plan,
                               std::uint64_t seed, std::size_t setting_index = 0);

/// All settings of one method on one problem, with summary statistics.
struct CellResult {
    SamplerKind method = SamplerKind::MC;
    std::size_t problem_index = 0;
    std::vector<SettingResult> settings;
    double mean = 0.0;
    double sigma = 0.0; // sample standard deviation (n - 1), 0 for a single setting
    std::size_t best_setting = 0;
    ParameterSample best_params;

    std::vector<double> best_values() const;
};

/// Recomputes mean, sigma, best_setting and best_params from the rows.
void summarize(CellResult& cell);

struct ExperimentReport {
    TuningPlan plan;
    std::vector<Problem> problems;
    /// Method-major: cells[m * problems.size() + p].
    std::vector<CellResult> cells;

    const CellResult& cell(std::size_t method_index, std::size_t problem_index) const;
    const CellResult& cell(SamplerKind method, std::size_t problem_index) const;
};

struct ExecutionOptions {
    std::size_t threads = 1;
};

/// Full methods x problems x settings x calls cube. Output does not depend
/// on the thread count or on scheduling.
ExperimentReport run_experiment(const TuningPlan& plan, ExecutionOptions exec = {});

struct ExtendedRuns {
    std::vector<SamplerKind> methods;
    ProblemSpec problem;
    /// One vector of num_settings best values per method.
    std::vector<std::vector<double>> best_values;
};

/// The same protocol restricted to one problem with a different number of
/// settings per method.
ExtendedRuns extended_runs(const TuningPlan& plan, const ProblemSpec& problem, std::size_t num_settings,
                           ExecutionOptions exec = {});

} // namespace fatune
