#include "fatune_cli/config.hpp"

#include "fatune_cli/format.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace fatune::cli {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find(',', start);
        if (end == std::string_view::npos) end = s.size();
        auto item = trim(s.substr(start, end - start));
        if (!item.empty()) out.push_back(std::move(item));
        start = end + 1;
    }
    return out;
}

template <class T>
T parse_unsigned(const Setting& s, T min_value = 0) {
    const auto v = trim(s.value);
    unsigned long long x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (v.empty() || ec != std::errc{} || p != v.data() + v.size()) {
        throw ConfigError(s.key, "expected a non-negative integer, got '" + s.value + "'");
    }
    if (x < min_value) throw ConfigError(s.key, "must be at least " + std::to_string(min_value));
    return static_cast<T>(x);
}

double parse_real(const Setting& s, const std::string& text) {
    const auto v = trim(text);
    double x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (v.empty() || ec != std::errc{} || p != v.data() + v.size() || !std::isfinite(x)) {
        throw ConfigError(s.key, "expected a finite number, got '" + text + "'");
    }
    return x;
}

bool parse_bool(const Setting& s) {
    auto v = trim(s.value);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(s.key, "expected true or false, got '" + s.value + "'");
}

Range parse_range(const Setting& s) {
    const auto parts = split_list(s.value);
    if (parts.size() != 2) throw ConfigError(s.key, "expected 'low, high', got '" + s.value + "'");
    Range r{parse_real(s, parts[0]), parse_real(s, parts[1])};
    if (!(r.low < r.high)) throw ConfigError(s.key, "low must be below high");
    return r;
}

Preset parse_preset(const Setting& s) {
    const auto v = trim(s.value);
    if (v == "paper") return Preset::Paper;
    if (v == "desk") return Preset::Desk;
    throw ConfigError(s.key, "expected paper or desk, got '" + s.value + "'");
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i];
    }
    return out;
}

std::string env_name(std::string key) {
    std::string out = "FATUNE_";
    for (char c : key) out += c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

} // namespace

std::string_view to_string(Preset preset) noexcept { return preset == Preset::Desk ? "desk" : "paper"; }

ExperimentConfig ExperimentConfig::from_preset(Preset preset) {
    ExperimentConfig c;
    c.preset = preset;
    c.plan = preset == Preset::Desk ? TuningPlan::desk() : TuningPlan::paper();
    return c;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "experiment.preset",        "experiment.methods",        "experiment.problems",
        "experiment.master_seed",   "experiment.output_dir",     "experiment.threads",
        "tuning.num_settings",      "tuning.calls_per_setting",  "tuning.redraw_per_problem",
        "firefly.population",       "firefly.iterations",        "firefly.alpha0",
        "firefly.distance",         "sampling.theta_range",      "sampling.beta_range",
        "sampling.gamma_range",     "benchmarks.penalty_lambda", "benchmarks.strict_spring",
    };
    return keys;
}

void apply_setting(ExperimentConfig& c, const Setting& s) {
    auto& plan = c.plan;
    const auto& k = s.key;
    if (k == "experiment.preset") {
        c.preset = parse_preset(s);
    } else if (k == "experiment.methods") {
        std::vector<SamplerKind> methods;
        for (const auto& m : split_list(s.value)) {
            try {
                methods.push_back(parse_sampler_kind(m));
            } catch (const std::exception&) {
                throw ConfigError(k, "unknown method '" + m + "' (expected MC, QMC or LHS)");
            }
        }
        if (methods.empty()) throw ConfigError(k, "at least one method is required");
        plan.methods = std::move(methods);
    } else if (k == "experiment.problems") {
        std::vector<ProblemSpec> problems;
        for (const auto& p : split_list(s.value)) {
            try {
                auto spec = ProblemSpec::parse(p);
                make_problem(spec.name, spec.dimension, {});
                problems.push_back(std::move(spec));
            } catch (const std::exception& e) {
                throw ConfigError(k, e.what());
            }
        }
        if (problems.empty()) throw ConfigError(k, "at least one problem is required");
        plan.problems = std::move(problems);
    } else if (k == "experiment.master_seed") {
        plan.master_seed = parse_unsigned<std::uint64_t>(s);
    } else if (k == "experiment.output_dir") {
        c.output_dir = trim(s.value);
        if (c.output_dir.empty()) throw ConfigError(k, "must not be empty");
    } else if (k == "experiment.threads") {
        c.threads = parse_unsigned<std::size_t>(s, 1);
    } else if (k == "tuning.num_settings") {
        plan.num_settings = parse_unsigned<std::size_t>(s, 1);
    } else if (k == "tuning.calls_per_setting") {
        plan.calls_per_setting = parse_unsigned<std::size_t>(s, 1);
    } else if (k == "tuning.redraw_per_problem") {
        plan.redraw_per_problem = parse_bool(s);
    } else if (k == "firefly.population") {
        plan.fa.population_size = parse_unsigned<std::size_t>(s, 2);
    } else if (k == "firefly.iterations") {
        plan.fa.max_iterations = parse_unsigned<std::size_t>(s, 1);
    } else if (k == "firefly.alpha0") {
        plan.fa.alpha0 = parse_real(s, s.value);
        if (plan.fa.alpha0 < 0) throw ConfigError(k, "must be >= 0");
    } else if (k == "firefly.distance") {
        const auto v = trim(s.value);
        if (v == "normalized") plan.fa.normalized_distance = true;
        else if (v == "euclidean") plan.fa.normalized_distance = false;
        else throw ConfigError(k, "expected normalized or euclidean, got '" + s.value + "'");
    } else if (k == "sampling.theta_range") {
        plan.ranges.theta = parse_range(s);
        if (!(plan.ranges.theta.low > 0.0 && plan.ranges.theta.high <= 1.0)) {
            throw ConfigError(k, "theta range must lie inside (0, 1]");
        }
    } else if (k == "sampling.beta_range") {
        plan.ranges.beta = parse_range(s);
        if (plan.ranges.beta.low < 0.0) throw ConfigError(k, "beta must be >= 0");
    } else if (k == "sampling.gamma_range") {
        plan.ranges.gamma = parse_range(s);
        if (plan.ranges.gamma.low < 0.0) throw ConfigError(k, "gamma must be >= 0");
    } else if (k == "benchmarks.penalty_lambda") {
        plan.penalty.lambda = parse_real(s, s.value);
        if (plan.penalty.lambda < 0) throw ConfigError(k, "must be >= 0");
    } else if (k == "benchmarks.strict_spring") {
        plan.strict_spring = parse_bool(s);
    } else {
        throw ConfigError(k, "unknown configuration key");
    }
}

std::vector<Setting> parse_config_text(std::string_view text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in{std::string(text)};
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("line " + std::to_string(e.line()), e.message());
    }
    std::vector<Setting> out;
    const auto& known = config_keys();
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw ConfigError(section, "keys must appear inside a [section]");
        for (const auto& [name, value] : body) {
            Setting s{section + "." + name, value.data()};
            if (std::find(known.begin(), known.end(), s.key) == known.end()) {
                throw ConfigError(s.key, "unknown configuration key");
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<Setting> settings_from_env(const std::function<const char*(const char*)>& getenv) {
    std::vector<Setting> out;
    for (const auto& key : config_keys()) {
        if (const char* v = getenv(env_name(key).c_str())) out.push_back({key, v});
    }
    return out;
}

ExperimentConfig resolve_config(const std::vector<std::vector<Setting>>& layers) {
    Preset preset = Preset::Paper;
    for (const auto& layer : layers) {
        for (const auto& s : layer) {
            if (s.key == "experiment.preset") preset = parse_preset(s);
        }
    }
    ExperimentConfig c = ExperimentConfig::from_preset(preset);
    for (const auto& layer : layers) {
        for (const auto& s : layer) {
            if (s.key != "experiment.preset") apply_setting(c, s);
        }
    }
    try {
        c.plan.validate();
    } catch (const std::exception& e) {
        throw ConfigError("experiment", e.what());
    }
    return c;
}

std::string serialize_config(const ExperimentConfig& c) {
    const auto& plan = c.plan;
    std::vector<std::string> methods, problems;
    for (auto m : plan.methods) methods.emplace_back(to_string(m));
    for (const auto& p : plan.problems) problems.push_back(p.to_string());
    auto range = [](const Range& r) { return format_real(r.low) + ", " + format_real(r.high); };

    std::ostringstream out;
    out << "[experiment]\n"
        << "preset = " << to_string(c.preset) << "\n"
        << "methods = " << join(methods) << "\n"
        << "problems = " << join(problems) << "\n"
        << "master_seed = " << plan.master_seed << "\n"
        << "output_dir = " << c.output_dir << "\n"
        << "threads = " << c.threads << "\n\n"
        << "[tuning]\n"
        << "num_settings = " << plan.num_settings << "\n"
        << "calls_per_setting = " << plan.calls_per_setting << "\n"
        << "redraw_per_problem = " << (plan.redraw_per_problem ? "true" : "false") << "\n\n"
        << "[firefly]\n"
        << "population = " << plan.fa.population_size << "\n"
        << "iterations = " << plan.fa.max_iterations << "\n"
        << "alpha0 = " << format_real(plan.fa.alpha0) << "\n"
        << "distance = " << (plan.fa.normalized_distance ? "normalized" : "euclidean") << "\n\n"
        << "[sampling]\n"
        << "theta_range = " << range(plan.ranges.theta) << "\n"
        << "beta_range = " << range(plan.ranges.beta) << "\n"
        << "gamma_range = " << range(plan.ranges.gamma) << "\n\n"
        << "[benchmarks]\n"
        << "penalty_lambda = " << format_real(plan.penalty.lambda) << "\n"
        << "strict_spring = " << (plan.strict_spring ? "true" : "false") << "\n";
    return out.str();
}

} // namespace fatune::cli
