#include "fatune_cli/commands.hpp"

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <cstdlib>
#include <iostream>

using namespace fatune::cli;

namespace {

struct CommonFlags {
    std::string config, preset, seed, methods, problems, out, threads;

    void attach(CLI::App& app) {
        app.add_option("--config", config, "experiment configuration file");
        app.add_option("--preset", preset, "paper or desk");
        app.add_option("--seed", seed, "master seed (unsigned 64-bit)");
        app.add_option("--methods", methods, "comma separated subset of MC,QMC,LHS");
        app.add_option("--problems", problems, "comma separated problems, name or name:D");
        app.add_option("--out", out, "output directory");
        app.add_option("--threads", threads, "worker threads");
    }

    ConfigSource source() const {
        ConfigSource s;
        if (!config.empty()) s.path = config;
        auto add = [&](const char* key, const std::string& v) {
            if (!v.empty()) s.overrides.push_back({key, v});
        };
        add("experiment.preset", preset);
        add("experiment.master_seed", seed);
        add("experiment.methods", methods);
        add("experiment.problems", problems);
        add("experiment.output_dir", out);
        add("experiment.threads", threads);
        return s;
    }
};

} // namespace

int main(int argc, char** argv) {
    const Context ctx{std::cout, std::cerr, [](const char* name) { return std::getenv(name); }};

    CLI::App app{"Firefly Algorithm parameter-tuning workbench"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    auto* run = app.add_subcommand("run", "run the tuning experiment and write all tables");
    run_flags.attach(*run);

    std::string report, tests = "t,f,friedman,anova", t_kind = "welch", stats_out;
    auto* stats = app.add_subcommand("stats", "statistical comparisons from a report");
    stats->add_option("report", report, "report.json written by run")->required();
    stats->add_option("--tests", tests, "comma separated subset of t,f,friedman,anova");
    stats->add_option("--t-kind", t_kind, "welch or paired");
    stats->add_option("--out", stats_out, "output directory (default: the report's)");

    std::string box_report, box_out;
    auto* box = app.add_subcommand("boxplot", "boxplot data and SVG of the best parameters");
    box->add_option("report", box_report, "report.json written by run")->required();
    box->add_option("--out", box_out, "output directory (default: the report's)");

    CommonFlags ext_flags;
    std::string ext_problem = "rosenbrock";
    std::size_t ext_n = 30;
    auto* ext = app.add_subcommand("extended", "many settings per method on one problem, with t-tests");
    ext_flags.attach(*ext);
    ext->add_option("--problem", ext_problem, "problem, name or name:D");
    ext->add_option("-n", ext_n, "settings per method");

    auto* problems = app.add_subcommand("problems", "list the benchmark catalog");
    auto* selftest = app.add_subcommand("selftest", "check distribution functions against the bundled oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    return guarded(ctx, [&]() -> int {
        if (*run) return cmd_run(run_flags.source(), ctx);
        if (*stats) {
            StatsOptions o;
            o.report_path = report;
            try {
                o.tests = parse_stats_tests(tests);
            } catch (const std::exception& e) {
                throw ConfigError("--tests", e.what());
            }
            if (t_kind == "paired") o.t_kind = fatune::stats::TestKind::PairedT;
            else if (t_kind != "welch") throw ConfigError("--t-kind", "expected welch or paired");
            if (!stats_out.empty()) o.out_dir = stats_out;
            return cmd_stats(o, ctx);
        }
        if (*box) return cmd_boxplot(box_report, box_out.empty() ? std::nullopt : std::optional(box_out), ctx);
        if (*ext) return cmd_extended(ext_flags.source(), ext_problem, ext_n, ctx);
        if (*problems) return cmd_problems(ctx);
        if (*selftest) return cmd_selftest(ctx);
        return kExitConfig;
    });
}
