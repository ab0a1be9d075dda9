#include "fatune_cli/commands.hpp"

#include "fatune/error.hpp"
#include "fatune/special_functions.hpp"
#include "fatune_cli/boxplot.hpp"
#include "fatune_cli/format.hpp"
#include "fatune_cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <utility>

namespace fatune::cli {

namespace detail {
extern const char* const kStatsOracleText;
}

namespace fs = std::filesystem;

namespace {

using Outputs = std::vector<std::pair<fs::path, std::string>>;

void write_all(const Outputs& outputs, const Context& ctx) {
    for (const auto& [path, content] : outputs) {
        write_file_atomic(path, content);
        ctx.out << "wrote " << path.string() << "\n";
    }
}

std::string fixed(double x, int width = 14) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%*.6g", width, x);
    return buf;
}

fs::path output_dir_for(const std::string& report_path, const std::optional<std::string>& out) {
    if (out) return *out;
    const auto parent = fs::path(report_path).parent_path();
    return parent.empty() ? fs::path(".") : parent;
}

LoadedReport load_report(const std::string& path, const Context& ctx) {
    if (!fs::exists(path)) throw MissingData("report not found: " + path);
    auto loaded = report_from_json(read_file(path));
    if (!loaded.hash_matches) ctx.err << "warning: content hash of " << path << " does not match its contents\n";
    return loaded;
}

void add_stats_outputs(const ExperimentReport& report, const std::vector<StatsTest>& tests, stats::TestKind t_kind,
                       const fs::path& dir, Outputs& outputs, const Context* lenient) {
    for (auto test : tests) {
        try {
            switch (test) {
            case StatsTest::T:
                outputs.emplace_back(dir / "ttest_pvalues.csv", ttest_table(report, t_kind).text());
                if (report.problems.size() >= 2) {
                    outputs.emplace_back(dir / "param_ttest_pvalues.csv", parameter_ttest_table(report).text());
                }
                break;
            case StatsTest::F: outputs.emplace_back(dir / "ftest_pvalues.csv", ftest_table(report).text()); break;
            case StatsTest::Friedman: outputs.emplace_back(dir / "friedman.csv", friedman_table(report).text()); break;
            case StatsTest::Anova: outputs.emplace_back(dir / "anova.csv", anova_table(report).text()); break;
            }
        } catch (const MissingData& e) {
            if (!lenient) throw;
            lenient->err << "warning: skipped statistics: " << e.what() << "\n";
        }
    }
}

void add_boxplot_outputs(const ExperimentReport& report, const fs::path& dir, Outputs& outputs, const Context& ctx) {
    const auto panels = parameter_panels(report);
    std::vector<std::string> skipped;
    outputs.emplace_back(dir / "boxplot.csv", boxplot_table(panels, &skipped).text());
    for (const auto& s : skipped) ctx.err << "warning: box " << s << " has fewer than 2 values and was omitted\n";
    outputs.emplace_back(dir / "boxplot.svg", render_boxplot_svg(panels));
}

void print_summary(const ExperimentReport& report, const Context& ctx) {
    ctx.out << "method  problem            mean          sigma           best\n";
    for (const auto& cell : report.cells) {
        const auto& p = report.problems[cell.problem_index];
        std::string name = std::string(p.label()) + " " + p.tag();
        name.resize(std::max<std::size_t>(name.size(), 16), ' ');
        std::string method(to_string(cell.method));
        method.resize(6, ' ');
        ctx.out << method << "  " << name << fixed(cell.mean) << " " << fixed(cell.sigma) << " "
                << fixed(cell.settings[cell.best_setting].best_value) << "\n";
    }
}

} // namespace

ExperimentConfig load_config(const ConfigSource& source, const Context& ctx) {
    std::vector<std::vector<Setting>> layers;
    if (source.path) {
        std::string text;
        try {
            text = read_file(*source.path);
        } catch (const IoError&) {
            throw IoError("cannot read config file " + *source.path);
        }
        layers.push_back(parse_config_text(text));
    }
    layers.push_back(settings_from_env(ctx.getenv));
    layers.push_back(source.overrides);
    return resolve_config(layers);
}

int cmd_run(const ConfigSource& source, const Context& ctx) {
    const auto config = load_config(source, ctx);
    const auto report = run_experiment(config.plan, {config.threads});
    const fs::path dir = config.output_dir;

    Outputs outputs;
    outputs.emplace_back(dir / "report.json", report_to_json(report, config.preset));
    outputs.emplace_back(dir / "config_used.ini", serialize_config(config));
    for (std::size_t m = 0; m < config.plan.methods.size(); ++m) {
        outputs.emplace_back(dir / ("objectives_" + std::string(to_string(config.plan.methods[m])) + ".csv"),
                             objective_table(report, m).text());
    }
    for (auto p : kParameters) {
        outputs.emplace_back(dir / ("params_" + std::string(to_string(p)) + ".csv"), parameter_table(report, p).text());
    }
    add_stats_outputs(report, {StatsTest::T, StatsTest::F, StatsTest::Friedman, StatsTest::Anova},
                      stats::TestKind::WelchT, dir, outputs, &ctx);
    add_boxplot_outputs(report, dir, outputs, ctx);

    print_summary(report, ctx);
    write_all(outputs, ctx);
    return kExitOk;
}

int cmd_stats(const StatsOptions& options, const Context& ctx) {
    const auto loaded = load_report(options.report_path, ctx);
    Outputs outputs;
    add_stats_outputs(loaded.report, options.tests, options.t_kind, output_dir_for(options.report_path, options.out_dir),
                      outputs, nullptr);
    for (const auto& [path, content] : outputs) {
        ctx.out << "== " << path.filename().string() << "\n" << content;
    }
    write_all(outputs, ctx);
    return kExitOk;
}

int cmd_boxplot(const std::string& report_path, const std::optional<std::string>& out_dir, const Context& ctx) {
    const auto loaded = load_report(report_path, ctx);
    if (loaded.report.problems.size() < 2) {
        throw MissingData("boxplots need best parameters from at least two problems");
    }
    Outputs outputs;
    add_boxplot_outputs(loaded.report, output_dir_for(report_path, out_dir), outputs, ctx);
    write_all(outputs, ctx);
    return kExitOk;
}

int cmd_extended(const ConfigSource& source, const std::string& problem, std::size_t n, const Context& ctx) {
    const auto config = load_config(source, ctx);
    if (n < 2) throw ConfigError("extended.n", "needs at least 2 settings per method");
    ProblemSpec spec;
    try {
        spec = ProblemSpec::parse(problem);
        make_problem(spec.name, spec.dimension, {});
    } catch (const std::exception& e) {
        throw ConfigError("extended.problem", e.what());
    }
    const auto ext = extended_runs(config.plan, spec, n, {config.threads});

    CsvTable values;
    values.header.push_back("run_index");
    for (auto m : ext.methods) values.header.emplace_back(to_string(m));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> row{std::to_string(i + 1)};
        for (const auto& v : ext.best_values) row.push_back(format_csv(v[i]));
        values.rows.push_back(std::move(row));
    }
    CsvTable tests;
    tests.header = {"pair", "statistic", "df", "p_value"};
    for (std::size_t a = 0; a < ext.methods.size(); ++a) {
        for (std::size_t b = a + 1; b < ext.methods.size(); ++b) {
            const auto r = stats::two_sample_t(ext.best_values[a], ext.best_values[b]);
            tests.rows.push_back({std::string(to_string(ext.methods[a])) + "_vs_" + std::string(to_string(ext.methods[b])),
                                  format_csv(r.statistic), format_csv(r.df1), format_csv(r.p_value)});
        }
    }
    ctx.out << tests.text();
    const fs::path dir = config.output_dir;
    write_all({{dir / ("extended_" + spec.name + ".csv"), values.text()},
               {dir / ("extended_" + spec.name + "_ttest.csv"), tests.text()}},
              ctx);
    return kExitOk;
}

int cmd_problems(const Context& ctx) {
    ctx.out << "label  name        dimension  constraints  known_best\n";
    for (const auto& name : problem_names()) {
        const auto p = make_problem(name);
        std::string n = p.name();
        n.resize(10, ' ');
        ctx.out << p.label() << "     " << n << "  " << fixed(static_cast<double>(p.dimension()), 9) << "  "
                << fixed(static_cast<double>(p.constraint_count()), 11) << "  " << (p.known_best_value() ? format_real(*p.known_best_value()) : "-")
                << "\n";
    }
    return kExitOk;
}

int cmd_selftest(const Context& ctx) {
    const auto table = CsvTable::parse(detail::kStatsOracleText);
    std::size_t failures = 0;
    for (const auto& row : table.rows) {
        if (row.size() != 6) throw MissingData("malformed oracle row");
        const double x = parse_real_text(row[1]), d1 = parse_real_text(row[2]), d2 = parse_real_text(row[3]);
        const double expected = parse_real_text(row[4]), tol = parse_real_text(row[5]);
        double got = 0;
        if (row[0] == "t") got = stats::t_cdf(x, d1);
        else if (row[0] == "f") got = stats::f_cdf(x, d1, d2);
        else if (row[0] == "chi2") got = stats::chi2_cdf(x, d1);
        else throw MissingData("unknown oracle kind " + row[0]);
        if (!(std::fabs(got - expected) <= tol)) {
            ++failures;
            ctx.err << "mismatch " << row[0] << "(" << row[1] << "; " << row[2] << ", " << row[3]
                    << "): " << format_real(got) << " vs " << row[4] << "\n";
        }
    }
    ctx.out << table.rows.size() - failures << "/" << table.rows.size() << " oracle values within tolerance\n";
    return failures == 0 ? kExitOk : kExitFailure;
}

int guarded(const Context& ctx, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        ctx.err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        ctx.err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const MissingData& e) {
        ctx.err << "missing data: " << e.what() << "\n";
        return kExitMissingData;
    } catch (const fatune::Error& e) {
        ctx.err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        ctx.err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

} // namespace fatune::cli
