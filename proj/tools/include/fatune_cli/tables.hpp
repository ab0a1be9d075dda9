#pragma once

#include "fatune/stats.hpp"
#include "fatune/tuning.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace fatune::cli {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string text() const;
    static CsvTable parse(std::string_view text);
};

enum class Parameter { Theta, Beta, Gamma };

std::string_view to_string(Parameter p) noexcept;
double value_of(const ParameterSample& s, Parameter p) noexcept;
inline constexpr Parameter kParameters[] = {Parameter::Theta, Parameter::Beta, Parameter::Gamma};

/// run_index plus one column per problem label; data rows 1..N followed by
/// mean and sigma rows.
CsvTable objective_table(const ExperimentReport& report, std::size_t method_index);

/// One row per problem, one column per method, holding the best setting's
/// parameter value.
CsvTable parameter_table(const ExperimentReport& report, Parameter p);

enum class StatsTest { T, F, Friedman, Anova };

/// Parses a comma separated subset of {t, f, friedman, anova}.
std::vector<StatsTest> parse_stats_tests(std::string_view list);

// Each table below throws MissingData when the report cannot support the
// test (fewer than two methods, settings or problems).

/// Per problem, the p-value of each method pair on the setting best values.
CsvTable ttest_table(const ExperimentReport& report, stats::TestKind kind = stats::TestKind::WelchT);
/// Per parameter, the p-value of each method pair over the problems.
CsvTable parameter_ttest_table(const ExperimentReport& report);
/// F-test p-values per problem and pair. A zero-variance sample yields
/// p = 1 when both samples are constant, else 0, and is flagged.
CsvTable ftest_table(const ExperimentReport& report);
/// One row per problem (blocks = settings) then one per parameter
/// (blocks = problems).
CsvTable friedman_table(const ExperimentReport& report);
/// Row and column effects, same targets as friedman_table.
CsvTable anova_table(const ExperimentReport& report);

/// Ordered method pairs (i < j) in plan order, e.g. "MC_vs_QMC".
std::vector<std::string> pair_labels(const ExperimentReport& report);

} // namespace fatune::cli
