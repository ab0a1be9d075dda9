#include "fatune_cli/report.hpp"

#include "fatune_cli/format.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fatune::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kFormat = "fatune-report";
constexpr int kVersion = 1;

json real(double x) {
    if (std::isfinite(x)) return x;
    return format_real(x);
}

double real(const json& j) {
    if (j.is_string()) return parse_real_text(j.get<std::string>());
    return j.get<double>();
}

json reals(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(real(x));
    return a;
}

std::vector<double> reals(const json& j) {
    std::vector<double> v;
    for (const auto& x : j) v.push_back(real(x));
    return v;
}

json params_json(const ParameterSample& p) { return {{"theta", p.theta}, {"beta", p.beta}, {"gamma", p.gamma}}; }

ParameterSample params_from(const json& j) {
    return {j.at("theta").get<double>(), j.at("beta").get<double>(), j.at("gamma").get<double>()};
}

json range_json(const Range& r) { return json::array({r.low, r.high}); }

Range range_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json config_echo(const TuningPlan& plan, Preset preset) {
    json methods = json::array(), problems = json::array();
    for (auto m : plan.methods) methods.push_back(std::string(to_string(m)));
    for (const auto& p : plan.problems) problems.push_back(p.to_string());
    return {
        {"experiment",
         {{"preset", std::string(to_string(preset))},
          {"methods", methods},
          {"problems", problems},
          {"master_seed", plan.master_seed}}},
        {"tuning",
         {{"num_settings", plan.num_settings},
          {"calls_per_setting", plan.calls_per_setting},
          {"redraw_per_problem", plan.redraw_per_problem}}},
        {"firefly",
         {{"population", plan.fa.population_size},
          {"iterations", plan.fa.max_iterations},
          {"alpha0", plan.fa.alpha0},
          {"distance", plan.fa.normalized_distance ? "normalized" : "euclidean"}}},
        {"sampling",
         {{"theta_range", range_json(plan.ranges.theta)},
          {"beta_range", range_json(plan.ranges.beta)},
          {"gamma_range", range_json(plan.ranges.gamma)}}},
        {"benchmarks", {{"penalty_lambda", plan.penalty.lambda}, {"strict_spring", plan.strict_spring}}},
    };
}

TuningPlan plan_from(const json& c, Preset& preset) {
    const auto& e = c.at("experiment");
    preset = e.at("preset").get<std::string>() == "desk" ? Preset::Desk : Preset::Paper;
    TuningPlan plan;
    plan.methods.clear();
    for (const auto& m : e.at("methods")) plan.methods.push_back(parse_sampler_kind(m.get<std::string>()));
    plan.problems.clear();
    for (const auto& p : e.at("problems")) plan.problems.push_back(ProblemSpec::parse(p.get<std::string>()));
    plan.master_seed = e.at("master_seed").get<std::uint64_t>();
    const auto& t = c.at("tuning");
    plan.num_settings = t.at("num_settings").get<std::size_t>();
    plan.calls_per_setting = t.at("calls_per_setting").get<std::size_t>();
    plan.redraw_per_problem = t.at("redraw_per_problem").get<bool>();
    const auto& f = c.at("firefly");
    plan.fa.population_size = f.at("population").get<std::size_t>();
    plan.fa.max_iterations = f.at("iterations").get<std::size_t>();
    plan.fa.alpha0 = f.at("alpha0").get<double>();
    plan.fa.normalized_distance = f.at("distance").get<std::string>() != "euclidean";
    const auto& s = c.at("sampling");
    plan.ranges.theta = range_from(s.at("theta_range"));
    plan.ranges.beta = range_from(s.at("beta_range"));
    plan.ranges.gamma = range_from(s.at("gamma_range"));
    const auto& b = c.at("benchmarks");
    plan.penalty.lambda = b.at("penalty_lambda").get<double>();
    plan.strict_spring = b.at("strict_spring").get<bool>();
    return plan;
}

std::string hash_input(const json& doc) { return doc.dump(); }

} // namespace

std::string git_blob_sha1(std::string_view content) {
    const std::string header = "blob " + std::to_string(content.size()) + std::string(1, '\0');
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    const bool ok = ctx && EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) &&
                    EVP_DigestUpdate(ctx, header.data(), header.size()) &&
                    EVP_DigestUpdate(ctx, content.data(), content.size()) &&
                    EVP_DigestFinal_ex(ctx, digest.data(), &length);
    EVP_MD_CTX_free(ctx);
    if (!ok) throw std::runtime_error("sha1 digest failed");
    std::string hex;
    char buf[3];
    for (unsigned i = 0; i < length; ++i) {
        const unsigned char b = digest[i];
        std::snprintf(buf, sizeof buf, "%02x", b);
        hex += buf;
    }
    return hex;
}

std::string report_to_json(const ExperimentReport& report, Preset preset) {
    json problems = json::array();
    for (const auto& p : report.problems) {
        problems.push_back({{"label", std::string(p.label())}, {"name", p.name()}, {"dimension", p.dimension()}});
    }
    json cells = json::array();
    for (const auto& cell : report.cells) {
        json settings = json::array();
        for (const auto& s : cell.settings) {
            settings.push_back({{"index", s.setting_index},
                                {"params", params_json(s.params)},
                                {"best_value", real(s.best_value)},
                                {"best_point", reals(s.best_point)},
                                {"per_call_bests", reals(s.per_call_bests)}});
        }
        cells.push_back({{"method", std::string(to_string(cell.method))},
                         {"problem", std::string(report.problems[cell.problem_index].label())},
                         {"problem_index", cell.problem_index},
                         {"mean", real(cell.mean)},
                         {"sigma", real(cell.sigma)},
                         {"best_setting", cell.best_setting},
                         {"best_params", params_json(cell.best_params)},
                         {"settings", settings}});
    }
    json doc = {{"format", kFormat},
                {"version", kVersion},
                {"config", config_echo(report.plan, preset)},
                {"problems", problems},
                {"cells", cells}};
    doc["content_hash"] = git_blob_sha1(hash_input(doc));
    return doc.dump(1) + "\n";
}

LoadedReport report_from_json(std::string_view text) {
    LoadedReport out;
    try {
        json doc = json::parse(text);
        if (doc.at("format").get<std::string>() != kFormat) throw MissingData("not a fatune report");
        if (doc.at("version").get<int>() != kVersion) throw MissingData("unsupported report version");
        out.content_hash = doc.value("content_hash", std::string{});
        doc.erase("content_hash");
        out.hash_matches = !out.content_hash.empty() && out.content_hash == git_blob_sha1(hash_input(doc));

        auto& rep = out.report;
        rep.plan = plan_from(doc.at("config"), out.preset);
        rep.problems = build_problems(rep.plan);
        const auto& problems = doc.at("problems");
        if (problems.size() != rep.problems.size()) throw MissingData("problem list does not match the config");
        for (std::size_t p = 0; p < rep.problems.size(); ++p) {
            if (problems[p].at("label").get<std::string>() != rep.problems[p].label() ||
                problems[p].at("dimension").get<std::size_t>() != rep.problems[p].dimension()) {
                throw MissingData("problem list does not match the config");
            }
        }
        for (const auto& c : doc.at("cells")) {
            CellResult cell;
            cell.method = parse_sampler_kind(c.at("method").get<std::string>());
            cell.problem_index = c.at("problem_index").get<std::size_t>();
            if (cell.problem_index >= rep.problems.size()) throw MissingData("cell refers to an unknown problem");
            cell.mean = real(c.at("mean"));
            cell.sigma = real(c.at("sigma"));
            cell.best_setting = c.at("best_setting").get<std::size_t>();
            cell.best_params = params_from(c.at("best_params"));
            for (const auto& s : c.at("settings")) {
                SettingResult r;
                r.setting_index = s.at("index").get<std::size_t>();
                r.params = params_from(s.at("params"));
                r.best_value = real(s.at("best_value"));
                r.best_point = reals(s.at("best_point"));
                r.per_call_bests = reals(s.at("per_call_bests"));
                cell.settings.push_back(std::move(r));
            }
            rep.cells.push_back(std::move(cell));
        }
        if (rep.cells.size() != rep.plan.methods.size() * rep.problems.size()) {
            throw MissingData("report has " + std::to_string(rep.cells.size()) + " cells, expected " +
                              std::to_string(rep.plan.methods.size() * rep.problems.size()));
        }
        for (std::size_t m = 0; m < rep.plan.methods.size(); ++m) {
            for (std::size_t p = 0; p < rep.problems.size(); ++p) {
                const auto& cell = rep.cells[m * rep.problems.size() + p];
                if (cell.method != rep.plan.methods[m] || cell.problem_index != p) {
                    throw MissingData("report cells are not in method-major order");
                }
            }
        }
    } catch (const MissingData&) {
        throw;
    } catch (const std::exception& e) {
        throw MissingData(std::string("malformed report: ") + e.what());
    }
    return out;
}

} // namespace fatune::cli
