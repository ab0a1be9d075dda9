#pragma once

#include "fatune/stats.hpp"
#include "fatune_cli/config.hpp"
#include "fatune_cli/tables.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fatune::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitIo = 3, kExitMissingData = 4 };

struct Context {
    std::ostream& out;
    std::ostream& err;
    std::function<const char*(const char*)> getenv;
};

/// Where a configuration comes from: an optional file plus command-line
/// overrides, already expressed as settings.
struct ConfigSource {
    std::optional<std::string> path;
    std::vector<Setting> overrides;
};

/// preset < file < environment < overrides.
ExperimentConfig load_config(const ConfigSource& source, const Context& ctx);

int cmd_run(const ConfigSource& source, const Context& ctx);

struct StatsOptions {
    std::string report_path;
    std::vector<StatsTest> tests{StatsTest::T, StatsTest::F, StatsTest::Friedman, StatsTest::Anova};
    stats::TestKind t_kind = stats::TestKind::WelchT;
    /// Defaults to the report's directory.
    std::optional<std::string> out_dir;
};

int cmd_stats(const StatsOptions& options, const Context& ctx);

int cmd_boxplot(const std::string& report_path, const std::optional<std::string>& out_dir, const Context& ctx);

int cmd_extended(const ConfigSource& source, const std::string& problem, std::size_t n, const Context& ctx);

int cmd_problems(const Context& ctx);

/// Checks the built-in special functions against the bundled oracle table.
int cmd_selftest(const Context& ctx);

/// Runs `body` and maps the library and CLI exceptions to exit codes,
/// printing the diagnostic to ctx.err.
int guarded(const Context& ctx, const std::function<int()>& body);

} // namespace fatune::cli
