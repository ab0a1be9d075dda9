// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include "fatune/benchmarks.hpp"
#include "fatune/firefly.hpp"
#include "fatune/sampling.hpp"
#include "fatune/special_functions.hpp"
#include "fatune/stats.hpp"
#include "fatune/tuning.hpp"
#include "fatune_cli/commands.hpp"
#include "fatune_cli/format.hpp"
#include "fatune_cli/report.hpp"
#include "fatune_cli/tables.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace fatune;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body, double limit_seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > limit_seconds) {
        o.check(false, "runtime " + std::to_string(secs) + " s exceeds " + std::to_string(limit_seconds) + " s");
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, title, secs,
                o.detail.empty() ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
}

std::string g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

cli::Context quiet_context(std::ostringstream& out, std::ostringstream& err) {
    return {out, err, [](const char*) -> const char* { return nullptr; }};
}

int run_cli(const std::vector<cli::Setting>& overrides, std::string* log = nullptr) {
    std::ostringstream out, err;
    const auto ctx = quiet_context(out, err);
    cli::ConfigSource src{FATUNE_ACCEPTANCE_CONFIG, overrides};
    const int code = cli::guarded(ctx, [&] { return cli::cmd_run(src, ctx); });
    if (log) *log = err.str();
    return code;
}

cli::LoadedReport load(const fs::path& dir) { return cli::report_from_json(cli::read_file(dir / "report.json")); }

const fs::path kOut = FATUNE_ACCEPTANCE_OUT;

Outcome known_optima() {
    Outcome o;
    auto at = [](const char* name, std::vector<double> x) { return evaluate_objective(make_problem(name), x); };
    const double trid = at("trid", {4, 6, 6, 4});
    o.check(trid == -16.0, "trid(4,6,6,4) = " + g(trid));
    const double spring = at("spring", {0.051690, 0.356750, 11.287126});
    o.check(std::fabs(spring - 0.012665) <= 1e-5, "spring literature point = " + g(spring));
    const double truss = at("truss", {0.78853, 0.40866});
    o.check(std::fabs(truss - 263.896) <= 0.01, "truss literature point = " + g(truss));
    for (const char* name : {"sphere", "rosenbrock", "ackley"}) {
        const auto p = make_problem(name);
        const double v = evaluate_objective(p, *p.known_best_point());
        o.check(std::fabs(v) <= 1e-12, std::string(name) + " optimum = " + g(v));
    }
    return o;
}

Outcome desk_performance() {
    Outcome o;
    const int code = run_cli({{"experiment.output_dir", (kOut / "desk_t1").string()}, {"experiment.threads", "1"}});
    o.check(code == 0, "run exited with " + std::to_string(code));
    if (code != 0) return o;
    const auto rep = load(kOut / "desk_t1").report;
    struct Target {
        const char* name;
        std::function<bool(double)> ok;
        const char* text;
    };
    const std::vector<Target> targets{
        {"sphere", [](double v) { return v <= 1e-2; }, "<= 1e-2"},
        {"rosenbrock", [](double v) { return v <= 1.0; }, "<= 1.0"},
        {"ackley", [](double v) { return v <= 0.5; }, "<= 0.5"},
        {"trid", [](double v) { return std::fabs(v + 16.0) <= 0.5; }, "within 0.5 of -16"},
        {"spring", [](double v) { return v <= 0.016; }, "<= 0.016"},
        {"truss", [](double v) { return v <= 264.0; }, "<= 264.0"},
    };
    for (std::size_t m = 0; m < rep.plan.methods.size(); ++m) {
        for (std::size_t p = 0; p < rep.problems.size(); ++p) {
            const auto& cell = rep.cell(m, p);
            const double best = cell.settings[cell.best_setting].best_value;
            const auto& t = *std::find_if(targets.begin(), targets.end(),
                                          [&](const Target& t) { return rep.problems[p].name() == t.name; });
            o.check(t.ok(best), std::string(to_string(rep.plan.methods[m])) + " " + t.name + " best " + g(best) +
                                    " not " + t.text);
        }
    }
    return o;
}

cli::LoadedReport ten_setting_report(Outcome& o) {
    static std::optional<cli::LoadedReport> cached;
    if (!cached) {
        const auto dir = kOut / "desk_10";
        const int code = run_cli({{"experiment.output_dir", dir.string()}, {"tuning.num_settings", "10"}});
        o.check(code == 0, "run exited with " + std::to_string(code));
        cached = load(dir);
    }
    return *cached;
}

Outcome hypothesis_h1() {
    Outcome o;
    const auto rep = ten_setting_report(o).report;
    const auto table = cli::ttest_table(rep);
    int above = 0, total = 0;
    std::string low;
    for (const auto& row : table.rows) {
        for (std::size_t c = 1; c < row.size(); ++c) {
            const double p = cli::parse_real_text(row[c]);
            ++total;
            if (p > 0.05) ++above;
            else low += " " + row[0] + "/" + table.header[c] + "=" + g(p);
        }
    }
    o.check(total == 18, "expected 18 t-tests, got " + std::to_string(total));
    o.check(above >= 15, std::to_string(above) + "/18 p > 0.05;" + low);
    if (o.pass) o.detail = std::to_string(above) + "/18 t-tests with p > 0.05" + (low.empty() ? "" : ";" + low);
    return o;
}

Outcome hypothesis_h2() {
    Outcome o;
    const auto rep = ten_setting_report(o).report;
    const auto friedman = cli::friedman_table(rep);
    const auto anova = cli::anova_table(rep);
    std::string summary;
    for (const auto& row : friedman.rows) {
        if (row[0] != "theta" && row[0] != "beta" && row[0] != "gamma") continue;
        const double p = cli::parse_real_text(row[3]);
        o.check(p > 0.05, "Friedman " + row[0] + " p = " + g(p));
        summary += " friedman_" + row[0] + "=" + g(p);
    }
    for (const auto& row : anova.rows) {
        if (row[0] != "theta" && row[0] != "beta" && row[0] != "gamma") continue;
        const double p = cli::parse_real_text(row[4]);
        o.check(p > 0.05, "ANOVA method effect " + row[0] + " p = " + g(p));
        summary += " anova_" + row[0] + "=" + g(p);
    }
    if (o.pass) o.detail = "p-values:" + summary;
    return o;
}

Outcome stats_oracle() {
    Outcome o;
    std::ifstream in(std::string(FATUNE_TEST_DATA_DIR) + "/stats_oracle.csv");
    std::stringstream ss;
    ss << in.rdbuf();
    const auto table = cli::CsvTable::parse(ss.str());
    o.check(table.rows.size() >= 100, "oracle has only " + std::to_string(table.rows.size()) + " rows");
    for (const auto& r : table.rows) {
        const double x = std::stod(r[1]), d1 = std::stod(r[2]), d2 = std::stod(r[3]);
        const double expected = std::stod(r[4]), tol = std::stod(r[5]);
        const double got = r[0] == "t" ? stats::t_cdf(x, d1) : r[0] == "f" ? stats::f_cdf(x, d1, d2) : stats::chi2_cdf(x, d1);
        o.check(std::fabs(got - expected) <= tol, r[0] + "(" + r[1] + ") = " + g(got) + " vs " + r[4]);
    }
    const std::vector<double> x{1, 2, 3, 4, 5}, y{2, 3, 4, 5, 6};
    const auto t = stats::two_sample_t(x, y);
    o.check(std::fabs(t.statistic + 1.0) < 1e-12 && std::fabs(t.p_value - 0.3466) <= 1e-3, "t example p = " + g(t.p_value));
    stats::BlockMatrix m(10, 3);
    for (std::size_t r = 0; r < 10; ++r)
        for (std::size_t c = 0; c < 3; ++c) m(r, c) = static_cast<double>(c);
    const auto f = stats::friedman(m);
    o.check(std::fabs(f.statistic - 20.0) < 1e-12 && std::fabs(f.p_value - 4.54e-5) <= 1e-6,
            "Friedman example p = " + g(f.p_value));
    std::vector<double> a{0.3, -1.2, 0.8, 2.1, -0.4, 1.5, -2.2, 0.1, 0.9, -0.6}, b = a;
    for (auto& v : b) v *= 0.5;
    const auto ft = stats::f_test_variance(a, b);
    o.check(std::fabs(ft.statistic - 4.0) < 1e-12 && ft.df1 == 9 && ft.df2 == 9 && std::fabs(ft.p_value - 0.051) <= 2e-3,
            "F example p = " + g(ft.p_value));
    return o;
}

Outcome sampler_suite() {
    Outcome o;
    RandomStream s(1);
    const auto sob = draw_sobol(4, 1, s, false);
    const std::vector<double> want{0, 0.5, 0.75, 0.25};
    for (std::size_t i = 0; i < 4; ++i) o.check(sob(i, 0) == want[i], "sobol point " + std::to_string(i));
    for (std::size_t n : {1, 4, 10, 100}) {
        RandomStream ls(n);
        const auto pts = draw_lhs(n, 3, ls);
        for (std::size_t d = 0; d < 3; ++d) {
            std::set<std::size_t> strata;
            for (std::size_t i = 0; i < n; ++i) strata.insert(static_cast<std::size_t>(std::floor(pts(i, d) * n)));
            o.check(strata.size() == n, "LHS n=" + std::to_string(n) + " not stratified");
        }
    }
    RandomStream ms(7);
    const auto mc = draw_mc(20000, 2, ms);
    for (std::size_t d = 0; d < 2; ++d) {
        double mean = 0, var = 0;
        for (std::size_t i = 0; i < mc.rows(); ++i) mean += mc(i, d);
        mean /= static_cast<double>(mc.rows());
        for (std::size_t i = 0; i < mc.rows(); ++i) var += (mc(i, d) - mean) * (mc(i, d) - mean);
        var /= static_cast<double>(mc.rows() - 1);
        o.check(std::fabs(mean - 0.5) < 0.01, "MC mean " + g(mean));
        o.check(std::fabs(var - 1.0 / 12.0) < 0.003, "MC variance " + g(var));
    }
    for (auto kind : {SamplerKind::MC, SamplerKind::QMC, SamplerKind::LHS}) {
        RandomStream a(42), b(42);
        o.check(draw(kind, 64, 3, a) == draw(kind, 64, 3, b), std::string(to_string(kind)) + " not deterministic");
    }
    return o;
}

Outcome fa_invariants() {
    Outcome o;
    const auto names = problem_names();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto p = make_problem(names[(seed - 1) % names.size()]);
        FaConfig cfg;
        cfg.max_iterations = 1000;
        cfg.theta = 0.9 + 0.009 * static_cast<double>(seed);
        cfg.beta = 0.1 * static_cast<double>(seed);
        cfg.gamma = 0.25 * static_cast<double>(seed);
        cfg.seed = seed;
        RandomStream stream(seed);
        auto state = init_population(p, cfg, stream);
        double prev = state.best_value;
        bool monotone = true, decay = true, inside = true;
        for (std::size_t t = 1; t <= cfg.max_iterations; ++t) {
            step(state, p, cfg, stream);
            monotone = monotone && state.best_value <= prev;
            prev = state.best_value;
            const double expect = std::pow(cfg.theta, static_cast<double>(t));
            decay = decay && std::fabs(state.alpha - expect) <= 1e-12 * expect;
            for (std::size_t i = 0; i < state.population; ++i) {
                const auto x = state.position(i);
                for (std::size_t k = 0; k < x.size(); ++k) {
                    inside = inside && x[k] >= p.lower_bounds()[k] && x[k] <= p.upper_bounds()[k];
                }
            }
        }
        for (std::size_t k = 0; k < state.best_point.size(); ++k) {
            inside = inside && state.best_point[k] >= p.lower_bounds()[k] && state.best_point[k] <= p.upper_bounds()[k];
        }
        const std::string tag = p.tag() + " seed " + std::to_string(seed);
        o.check(monotone, tag + ": best got worse");
        o.check(decay, tag + ": alpha decay off");
        o.check(inside, tag + ": point outside bounds");
    }
    const auto p = make_problem("rosenbrock");
    FaConfig cfg;
    cfg.beta = 0.0;
    cfg.alpha0 = 0.0;
    RandomStream stream(3);
    auto state = init_population(p, cfg, stream);
    const auto before = state.positions;
    for (int t = 0; t < 10; ++t) step(state, p, cfg, stream);
    o.check(state.positions == before, "beta = 0, alpha = 0 moved the population");
    return o;
}

Outcome end_to_end_determinism() {
    Outcome o;
    const auto a = kOut / "desk_t1" / "report.json";
    if (!fs::exists(a)) {
        run_cli({{"experiment.output_dir", (kOut / "desk_t1").string()}, {"experiment.threads", "1"}});
    }
    const int code = run_cli({{"experiment.output_dir", (kOut / "desk_t3").string()}, {"experiment.threads", "3"}});
    o.check(code == 0, "second run exited with " + std::to_string(code));
    const auto b = kOut / "desk_t3" / "report.json";
    const std::string ta = cli::read_file(a), tb = cli::read_file(b);
    o.check(!ta.empty() && ta == tb, "reports differ between --threads 1 and --threads 3");
    const auto c = kOut / "desk_t3b";
    run_cli({{"experiment.output_dir", c.string()}, {"experiment.threads", "3"}});
    o.check(cli::read_file(c / "report.json") == tb, "reports differ between two --threads 3 runs");
    return o;
}

} // namespace

int main() {
    fs::create_directories(kOut);
    report(1, "known optima", known_optima, 1.0);
    report(2, "desk-scale tuned performance", desk_performance, 600.0);
    report(3, "hypothesis H1 t-test reproduction", hypothesis_h1, 1200.0);
    report(4, "hypothesis H2 Friedman and ANOVA on parameters", hypothesis_h2, 1200.0);
    report(5, "stats oracle suite", stats_oracle, 5.0);
    report(6, "sampler suite", sampler_suite, 5.0);
    report(7, "FA invariant suite", fa_invariants, 30.0);
    report(8, "end-to-end determinism", end_to_end_determinism, 1200.0);
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
