#include "fatune/tuning.hpp"

#include "fatune/error.hpp"
#include "fatune/stats.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace fatune {

namespace {

// Runs body(0..count-1) on up to `threads` workers. Work items must write
// to disjoint outputs; the first exception is rethrown after joining.
template <typename Body>
void parallel_for(std::size_t count, std::size_t threads, Body&& body) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next.store(count);
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

FaConfig fa_config(const TuningPlan& plan, const ParameterSample& params, std::uint64_t seed) {
    FaConfig cfg;
    cfg.population_size = plan.fa.population_size;
    cfg.max_iterations = plan.fa.max_iterations;
    cfg.alpha0 = plan.fa.alpha0;
    cfg.normalized_distance = plan.fa.normalized_distance;
    cfg.theta = params.theta;
    cfg.beta = params.beta;
    cfg.gamma = params.gamma;
    cfg.penalty = plan.penalty;
    cfg.seed = seed;
    return cfg;
}

struct CallOutcome {
    double best_value = 0.0;
    std::vector<double> best_point;
};

CallOutcome run_call(const Problem& problem, const ParameterSample& params, const TuningPlan& plan,
                     std::uint64_t unit_seed, std::size_t call) {
    const FaConfig cfg = fa_config(plan, params, derive_seed(unit_seed, {call}));
    RunOutcome run = optimize(problem, cfg);
    return {run.best_value, std::move(run.best_point)};
}

SettingResult assemble_setting(std::size_t index, const ParameterSample& params, std::span<CallOutcome> calls) {
    SettingResult res;
    res.setting_index = index;
    res.params = params;
    res.per_call_bests.reserve(calls.size());
    std::size_t best = 0;
    for (std::size_t c = 0; c < calls.size(); ++c) {
        res.per_call_bests.push_back(calls[c].best_value);
        if (calls[c].best_value < calls[best].best_value) best = c;
    }
    res.best_value = calls[best].best_value;
    res.best_point = std::move(calls[best].best_point);
    return res;
}

} // namespace

ProblemSpec ProblemSpec::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        const auto b = s.find_first_not_of(" \t");
        if (b == std::string_view::npos) return std::string_view{};
        const auto e = s.find_last_not_of(" \t");
        return s.substr(b, e - b + 1);
    };
    text = trim(text);
    ProblemSpec spec;
    const auto colon = text.find(':');
    spec.name = std::string(trim(text.substr(0, colon)));
    if (spec.name.empty()) throw InvalidArgument("empty problem name");
    if (colon != std::string_view::npos) {
        const auto digits = trim(text.substr(colon + 1));
        std::size_t d = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || d == 0) {
            throw InvalidArgument("bad dimension in problem spec '" + std::string(text) + "'");
        }
        spec.dimension = d;
    }
    return spec;
}

std::string ProblemSpec::to_string() const {
    return dimension ? name + ":" + std::to_string(*dimension) : name;
}

TuningPlan TuningPlan::paper() { return TuningPlan{}; }

TuningPlan TuningPlan::desk() {
    TuningPlan plan;
    plan.num_settings = 5;
    plan.calls_per_setting = 10;
    plan.fa.population_size = 20;
    plan.fa.max_iterations = 250;
    return plan;
}

void TuningPlan::validate() const {
    if (methods.empty()) throw InvalidArgument("plan: at least one method is required");
    if (std::set<SamplerKind>(methods.begin(), methods.end()).size() != methods.size()) {
        throw InvalidArgument("plan: methods must not repeat");
    }
    if (problems.empty()) throw InvalidArgument("plan: at least one problem is required");
    std::set<std::string> names;
    for (const auto& p : problems) {
        if (!names.insert(p.name).second) throw InvalidArgument("plan: problem '" + p.name + "' listed twice");
    }
    if (num_settings < 1) throw InvalidArgument("plan: num_settings must be at least 1");
    if (calls_per_setting < 1) throw InvalidArgument("plan: calls_per_setting must be at least 1");
    if (fa.population_size < 2) throw InvalidArgument("plan: population must be at least 2");
    if (fa.max_iterations < 1) throw InvalidArgument("plan: iterations must be at least 1");
    if (!(fa.alpha0 >= 0.0)) throw InvalidArgument("plan: alpha0 must be >= 0");
    ranges.validate();
    if (!(ranges.theta.low > 0.0 && ranges.theta.high <= 1.0)) {
        throw InvalidArgument("plan: theta range must lie inside (0, 1]");
    }
    if (ranges.beta.low < 0.0 || ranges.gamma.low < 0.0) {
        throw InvalidArgument("plan: beta and gamma ranges must be non-negative");
    }
    penalty.validate();
}

std::vector<Problem> build_problems(const TuningPlan& plan) {
    std::vector<Problem> out;
    out.reserve(plan.problems.size());
    for (const auto& spec : plan.problems) {
        out.push_back(make_problem(spec.name, spec.dimension, ProblemOptions{plan.strict_spring}));
    }
    return out;
}

std::vector<ParameterSample> generate_settings(const TuningPlan& plan, SamplerKind method, const Problem* problem) {
    plan.validate();
    const std::uint64_t problem_tag = (plan.redraw_per_problem && problem) ? hash_tag(problem->tag()) : 0;
    RandomStream stream(
        derive_seed(plan.master_seed, {hash_tag("settings"), hash_tag(to_string(method)), problem_tag}));
    return scale_to_ranges(draw(method, plan.num_settings, 3, stream), plan.ranges);
}

std::uint64_t setting_seed(const TuningPlan& plan, SamplerKind method, const Problem& problem,
                           std::size_t setting_index) {
    return derive_seed(plan.master_seed,
                       {hash_tag("firefly"), hash_tag(to_string(method)), hash_tag(problem.tag()), setting_index});
}

SettingResult evaluate_setting(const Problem& problem, const ParameterSample& params, const TuningPlan& plan,
                               std::uint64_t seed, std::size_t setting_index) {
    std::vector<CallOutcome> calls;
    calls.reserve(plan.calls_per_setting);
    for (std::size_t c = 0; c < plan.calls_per_setting; ++c) {
        calls.push_back(run_call(problem, params, plan, seed, c));
    }
    return assemble_setting(setting_index, params, calls);
}

std::vector<double> CellResult::best_values() const {
    std::vector<double> v;
    v.reserve(settings.size());
    for (const auto& s : settings) v.push_back(s.best_value);
    return v;
}

void summarize(CellResult& cell) {
    if (cell.settings.empty()) throw InvalidArgument("summarize: cell has no settings");
    const auto values = cell.best_values();
    cell.mean = stats::mean(values);
    cell.sigma = stats::sample_sd(values);
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[best]) best = i;
    }
    cell.best_setting = best;
    cell.best_params = cell.settings[best].params;
}

const CellResult& ExperimentReport::cell(std::size_t method_index, std::size_t problem_index) const {
    return cells.at(method_index * problems.size() + problem_index);
}

const CellResult& ExperimentReport::cell(SamplerKind method, std::size_t problem_index) const {
    const auto it = std::find(plan.methods.begin(), plan.methods.end(), method);
    if (it == plan.methods.end()) throw InvalidArgument("report has no method " + std::string(to_string(method)));
    return cell(static_cast<std::size_t>(it - plan.methods.begin()), problem_index);
}

ExperimentReport run_experiment(const TuningPlan& plan, ExecutionOptions exec) {
    plan.validate();
    ExperimentReport report;
    report.plan = plan;
    report.problems = build_problems(plan);

    const std::size_t n_methods = plan.methods.size();
    const std::size_t n_problems = report.problems.size();
    const std::size_t n_cells = n_methods * n_problems;
    const std::size_t n_settings = plan.num_settings;
    const std::size_t n_calls = plan.calls_per_setting;

    // Parameter pools and unit seeds, drawn serially.
    std::vector<std::vector<ParameterSample>> params(n_cells);
    std::vector<std::uint64_t> seeds(n_cells * n_settings);
    for (std::size_t m = 0; m < n_methods; ++m) {
        std::vector<ParameterSample> shared;
        if (!plan.redraw_per_problem) shared = generate_settings(plan, plan.methods[m]);
        for (std::size_t p = 0; p < n_problems; ++p) {
            const std::size_t c = m * n_problems + p;
            params[c] = plan.redraw_per_problem ? generate_settings(plan, plan.methods[m], &report.problems[p])
                                                : shared;
            for (std::size_t s = 0; s < n_settings; ++s) {
                seeds[c * n_settings + s] = setting_seed(plan, plan.methods[m], report.problems[p], s);
            }
        }
    }

    std::vector<CallOutcome> outcomes(n_cells * n_settings * n_calls);
    parallel_for(outcomes.size(), exec.threads, [&](std::size_t u) {
        const std::size_t call = u % n_calls;
        const std::size_t unit = u / n_calls;
        const std::size_t setting = unit % n_settings;
        const std::size_t c = unit / n_settings;
        outcomes[u] = run_call(report.problems[c % n_problems], params[c][setting], plan, seeds[unit], call);
    });

    report.cells.resize(n_cells);
    for (std::size_t c = 0; c < n_cells; ++c) {
        CellResult& cell = report.cells[c];
        cell.method = plan.methods[c / n_problems];
        cell.problem_index = c % n_problems;
        for (std::size_t s = 0; s < n_settings; ++s) {
            std::span<CallOutcome> calls(outcomes.data() + (c * n_settings + s) * n_calls, n_calls);
            cell.settings.push_back(assemble_setting(s, params[c][s], calls));
        }
        summarize(cell);
    }
    return report;
}

ExtendedRuns extended_runs(const TuningPlan& plan, const ProblemSpec& problem, std::size_t num_settings,
                           ExecutionOptions exec) {
    TuningPlan sub = plan;
    sub.problems = {problem};
    sub.num_settings = num_settings;
    const ExperimentReport report = run_experiment(sub, exec);
    ExtendedRuns out;
    out.methods = sub.methods;
    out.problem = problem;
    for (std::size_t m = 0; m < sub.methods.size(); ++m) {
        out.best_values.push_back(report.cell(m, 0).best_values());
    }
    return out;
}

} // namespace fatune
