#include "fatune_cli/tables.hpp"

#include "fatune/error.hpp"
#include "fatune_cli/format.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fatune::cli {

namespace {

using stats::BlockMatrix;
using stats::TestKind;
using stats::TestResult;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string flag(const TestResult& r) { return r.degenerate ? "1" : "0"; }

void need_methods(const ExperimentReport& r) {
    if (r.plan.methods.size() < 2) throw MissingData("comparisons need at least two methods in the report");
}

void need_settings(const ExperimentReport& r) {
    if (r.plan.num_settings < 2) throw MissingData("tests need at least two settings per method");
}

void need_problems(const ExperimentReport& r) {
    if (r.problems.size() < 2) throw MissingData("parameter-level tests need at least two problems");
}

std::vector<double> parameter_column(const ExperimentReport& r, std::size_t m, Parameter p) {
    std::vector<double> v;
    for (std::size_t i = 0; i < r.problems.size(); ++i) v.push_back(value_of(r.cell(m, i).best_params, p));
    return v;
}

BlockMatrix objective_block(const ExperimentReport& r, std::size_t problem) {
    std::vector<std::vector<double>> cols;
    for (std::size_t m = 0; m < r.plan.methods.size(); ++m) cols.push_back(r.cell(m, problem).best_values());
    return BlockMatrix::from_columns(cols);
}

BlockMatrix parameter_block(const ExperimentReport& r, Parameter p) {
    std::vector<std::vector<double>> cols;
    for (std::size_t m = 0; m < r.plan.methods.size(); ++m) cols.push_back(parameter_column(r, m, p));
    return BlockMatrix::from_columns(cols);
}

TestResult f_test_flagged(std::span<const double> x, std::span<const double> y) {
    try {
        return stats::f_test_variance(x, y);
    } catch (const DegenerateVariance&) {
        TestResult r;
        r.kind = TestKind::FVariance;
        r.df1 = static_cast<double>(x.size()) - 1.0;
        r.df2 = static_cast<double>(y.size()) - 1.0;
        const bool both = stats::sample_variance(x) == 0.0 && stats::sample_variance(y) == 0.0;
        r.statistic = both ? 1.0 : (stats::sample_variance(y) == 0.0 ? HUGE_VAL : 0.0);
        r.p_value = both ? 1.0 : 0.0;
        r.degenerate = true;
        return r;
    }
}

} // namespace

std::string CsvTable::text() const {
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
        out << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out.str();
}

CsvTable CsvTable::parse(std::string_view text) {
    CsvTable t;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false, any = false;
    auto end_row = [&] {
        row.push_back(std::move(cell));
        cell.clear();
        if (t.header.empty()) t.header = std::move(row);
        else t.rows.push_back(std::move(row));
        row.clear();
        any = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        any = true;
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') cell += '"', ++i;
            else if (c == '"') quoted = false;
            else cell += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(cell));
            cell.clear();
        } else if (c == '\n') {
            end_row();
        } else if (c != '\r') {
            cell += c;
        }
    }
    if (any) end_row();
    return t;
}

std::string_view to_string(Parameter p) noexcept {
    switch (p) {
    case Parameter::Theta: return "theta";
    case Parameter::Beta: return "beta";
    case Parameter::Gamma: return "gamma";
    }
    return "?";
}

double value_of(const ParameterSample& s, Parameter p) noexcept {
    switch (p) {
    case Parameter::Theta: return s.theta;
    case Parameter::Beta: return s.beta;
    case Parameter::Gamma: return s.gamma;
    }
    return 0.0;
}

CsvTable objective_table(const ExperimentReport& report, std::size_t m) {
    CsvTable t;
    t.header.push_back("run_index");
    for (const auto& p : report.problems) t.header.emplace_back(p.label());
    for (std::size_t s = 0; s < report.plan.num_settings; ++s) {
        std::vector<std::string> row{std::to_string(s + 1)};
        for (std::size_t p = 0; p < report.problems.size(); ++p) {
            row.push_back(format_csv(report.cell(m, p).settings[s].best_value));
        }
        t.rows.push_back(std::move(row));
    }
    std::vector<std::string> mean{"mean"}, sigma{"sigma"};
    for (std::size_t p = 0; p < report.problems.size(); ++p) {
        mean.push_back(format_csv(report.cell(m, p).mean));
        sigma.push_back(format_csv(report.cell(m, p).sigma));
    }
    t.rows.push_back(std::move(mean));
    t.rows.push_back(std::move(sigma));
    return t;
}

CsvTable parameter_table(const ExperimentReport& report, Parameter param) {
    CsvTable t;
    t.header.push_back("problem");
    for (auto m : report.plan.methods) t.header.emplace_back(to_string(m));
    for (std::size_t p = 0; p < report.problems.size(); ++p) {
        std::vector<std::string> row{std::string(report.problems[p].label())};
        for (std::size_t m = 0; m < report.plan.methods.size(); ++m) {
            row.push_back(format_csv(value_of(report.cell(m, p).best_params, param)));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::vector<StatsTest> parse_stats_tests(std::string_view list) {
    std::vector<StatsTest> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        auto end = list.find(',', start);
        if (end == std::string_view::npos) end = list.size();
        const auto item = list.substr(start, end - start);
        StatsTest t;
        if (item == "t") t = StatsTest::T;
        else if (item == "f") t = StatsTest::F;
        else if (item == "friedman") t = StatsTest::Friedman;
        else if (item == "anova") t = StatsTest::Anova;
        else throw InvalidArgument("unknown test '" + std::string(item) + "' (expected t, f, friedman, anova)");
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
        start = end + 1;
    }
    return out;
}

std::vector<std::string> pair_labels(const ExperimentReport& report) {
    std::vector<std::string> out;
    const auto& ms = report.plan.methods;
    for (std::size_t a = 0; a < ms.size(); ++a)
        for (std::size_t b = a + 1; b < ms.size(); ++b)
            out.push_back(std::string(to_string(ms[a])) + "_vs_" + std::string(to_string(ms[b])));
    return out;
}

CsvTable ttest_table(const ExperimentReport& report, TestKind kind) {
    need_methods(report);
    need_settings(report);
    CsvTable t;
    t.header.push_back("problem");
    for (const auto& l : pair_labels(report)) t.header.push_back(l);
    const std::size_t k = report.plan.methods.size();
    for (std::size_t p = 0; p < report.problems.size(); ++p) {
        std::vector<std::string> row{std::string(report.problems[p].label())};
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                const auto x = report.cell(a, p).best_values(), y = report.cell(b, p).best_values();
                const auto r = kind == TestKind::PairedT ? stats::paired_t(x, y) : stats::two_sample_t(x, y);
                row.push_back(format_csv(r.p_value));
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable parameter_ttest_table(const ExperimentReport& report) {
    need_methods(report);
    need_problems(report);
    CsvTable t;
    t.header.push_back("parameter");
    for (const auto& l : pair_labels(report)) t.header.push_back(l);
    const std::size_t k = report.plan.methods.size();
    for (auto param : kParameters) {
        std::vector<std::string> row{std::string(to_string(param))};
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                const auto r =
                    stats::two_sample_t(parameter_column(report, a, param), parameter_column(report, b, param));
                row.push_back(format_csv(r.p_value));
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable ftest_table(const ExperimentReport& report) {
    need_methods(report);
    need_settings(report);
    CsvTable t;
    t.header.push_back("problem");
    for (const auto& l : pair_labels(report)) t.header.push_back(l);
    t.header.push_back("degenerate");
    const std::size_t k = report.plan.methods.size();
    for (std::size_t p = 0; p < report.problems.size(); ++p) {
        std::vector<std::string> row{std::string(report.problems[p].label())};
        std::string degenerate;
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                const auto r = f_test_flagged(report.cell(a, p).best_values(), report.cell(b, p).best_values());
                row.push_back(format_csv(r.p_value));
                degenerate += flag(r);
            }
        }
        row.push_back(degenerate);
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable friedman_table(const ExperimentReport& report) {
    need_methods(report);
    need_settings(report);
    CsvTable t;
    t.header = {"target", "statistic", "df", "p_value", "degenerate"};
    auto add = [&](std::string target, const TestResult& r) {
        t.rows.push_back({std::move(target), format_csv(r.statistic), format_csv(r.df1), format_csv(r.p_value), flag(r)});
    };
    for (std::size_t p = 0; p < report.problems.size(); ++p) {
        add(std::string(report.problems[p].label()), stats::friedman(objective_block(report, p)));
    }
    if (report.problems.size() >= 2) {
        for (auto param : kParameters) add(std::string(to_string(param)), stats::friedman(parameter_block(report, param)));
    }
    return t;
}

CsvTable anova_table(const ExperimentReport& report) {
    need_methods(report);
    need_settings(report);
    CsvTable t;
    t.header = {"target", "row_F", "row_p", "column_F", "column_p", "min_p", "degenerate"};
    auto add = [&](std::string target, const stats::AnovaResult& a) {
        t.rows.push_back({std::move(target), format_csv(a.rows.statistic), format_csv(a.rows.p_value),
                          format_csv(a.columns.statistic), format_csv(a.columns.p_value),
                          format_csv(std::min(a.rows.p_value, a.columns.p_value)),
                          flag(a.rows) + flag(a.columns)});
    };
    for (std::size_t p = 0; p < report.problems.size(); ++p) {
        add(std::string(report.problems[p].label()), stats::two_way_anova(objective_block(report, p)));
    }
    if (report.problems.size() >= 2) {
        for (auto param : kParameters) add(std::string(to_string(param)), stats::two_way_anova(parameter_block(report, param)));
    }
    return t;
}

} // namespace fatune::cli
