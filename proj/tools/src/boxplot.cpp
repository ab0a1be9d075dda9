#include "fatune_cli/boxplot.hpp"

#include "fatune/error.hpp"
#include "fatune_cli/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fatune::cli {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string tick(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

} // namespace

double quantile_type7(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw InvalidArgument("quantile of an empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BoxSummary summarize_box(std::vector<double> values) {
    if (values.empty()) throw InvalidArgument("box summary of an empty sample");
    std::sort(values.begin(), values.end());
    BoxSummary b;
    b.count = values.size();
    b.min = values.front();
    b.max = values.back();
    b.q1 = quantile_type7(values, 0.25);
    b.median = quantile_type7(values, 0.5);
    b.q3 = quantile_type7(values, 0.75);
    const double iqr = b.q3 - b.q1;
    const double lo_fence = b.q1 - 1.5 * iqr, hi_fence = b.q3 + 1.5 * iqr;
    b.whisker_low = b.q1;
    b.whisker_high = b.q3;
    for (double v : values) {
        if (v < lo_fence || v > hi_fence) {
            b.outliers.push_back(v);
        } else {
            b.whisker_low = std::min(b.whisker_low, v);
            b.whisker_high = std::max(b.whisker_high, v);
        }
    }
    return b;
}

std::vector<BoxPanel> parameter_panels(const ExperimentReport& report) {
    std::vector<BoxPanel> panels;
    for (auto param : kParameters) {
        BoxPanel panel{std::string(to_string(param)), {}};
        for (std::size_t m = 0; m < report.plan.methods.size(); ++m) {
            BoxSeries s{std::string(to_string(report.plan.methods[m])), {}};
            for (std::size_t p = 0; p < report.problems.size(); ++p) {
                s.values.push_back(value_of(report.cell(m, p).best_params, param));
            }
            panel.series.push_back(std::move(s));
        }
        panels.push_back(std::move(panel));
    }
    return panels;
}

CsvTable boxplot_table(const std::vector<BoxPanel>& panels, std::vector<std::string>* skipped) {
    CsvTable t;
    t.header = {"parameter", "method", "count", "min", "q1", "median", "q3", "max", "whisker_low", "whisker_high",
                "outliers"};
    for (const auto& panel : panels) {
        for (const auto& s : panel.series) {
            if (s.values.size() < 2) {
                if (skipped) skipped->push_back(panel.title + "/" + s.label);
                continue;
            }
            const auto b = summarize_box(s.values);
            std::string outliers;
            for (std::size_t i = 0; i < b.outliers.size(); ++i) outliers += (i ? ";" : "") + format_csv(b.outliers[i]);
            t.rows.push_back({panel.title, s.label, std::to_string(b.count), format_csv(b.min), format_csv(b.q1),
                              format_csv(b.median), format_csv(b.q3), format_csv(b.max), format_csv(b.whisker_low),
                              format_csv(b.whisker_high), outliers});
        }
    }
    return t;
}

std::string render_boxplot_svg(const std::vector<BoxPanel>& panels) {
    constexpr double panel_w = 220, panel_h = 300, margin = 50, top = 40, bottom = 40;
    const double width = margin + static_cast<double>(panels.size()) * (panel_w + margin);
    const double height = top + panel_h + bottom;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const auto& panel = panels[pi];
        const double x0 = margin + static_cast<double>(pi) * (panel_w + margin);
        double lo = HUGE_VAL, hi = -HUGE_VAL;
        for (const auto& s : panel.series)
            for (double v : s.values) lo = std::min(lo, v), hi = std::max(hi, v);
        if (!(lo < hi)) {
            const double c = std::isfinite(lo) ? lo : 0.0;
            lo = c - 0.5, hi = c + 0.5;
        }
        const double pad = 0.05 * (hi - lo);
        lo -= pad, hi += pad;
        auto y = [&](double v) { return top + panel_h * (hi - v) / (hi - lo); };

        svg << "<g>\n<text x=\"" << num(x0 + panel_w / 2) << "\" y=\"" << num(top - 15)
            << "\" text-anchor=\"middle\" font-size=\"14\">" << panel.title << "</text>\n";
        svg << "<rect x=\"" << num(x0) << "\" y=\"" << num(top) << "\" width=\"" << num(panel_w) << "\" height=\""
            << num(panel_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int k = 0; k <= 4; ++k) {
            const double v = lo + (hi - lo) * k / 4.0;
            svg << "<line x1=\"" << num(x0 - 4) << "\" y1=\"" << num(y(v)) << "\" x2=\"" << num(x0) << "\" y2=\""
                << num(y(v)) << "\" stroke=\"black\"/>\n"
                << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(y(v) + 4) << "\" text-anchor=\"end\">" << tick(v)
                << "</text>\n";
        }
        const double slot = panel_w / static_cast<double>(std::max<std::size_t>(panel.series.size(), 1));
        for (std::size_t si = 0; si < panel.series.size(); ++si) {
            const auto& s = panel.series[si];
            const double cx = x0 + slot * (static_cast<double>(si) + 0.5);
            svg << "<text x=\"" << num(cx) << "\" y=\"" << num(top + panel_h + 18) << "\" text-anchor=\"middle\">"
                << s.label << "</text>\n";
            if (s.values.size() < 2) continue;
            const auto b = summarize_box(s.values);
            const double half = slot * 0.25;
            svg << "<line x1=\"" << num(cx) << "\" y1=\"" << num(y(b.whisker_high)) << "\" x2=\"" << num(cx)
                << "\" y2=\"" << num(y(b.q3)) << "\" stroke=\"black\" stroke-dasharray=\"4,2\"/>\n"
                << "<line x1=\"" << num(cx) << "\" y1=\"" << num(y(b.q1)) << "\" x2=\"" << num(cx) << "\" y2=\""
                << num(y(b.whisker_low)) << "\" stroke=\"black\" stroke-dasharray=\"4,2\"/>\n";
            for (double w : {b.whisker_low, b.whisker_high}) {
                svg << "<line x1=\"" << num(cx - half / 2) << "\" y1=\"" << num(y(w)) << "\" x2=\"" << num(cx + half / 2)
                    << "\" y2=\"" << num(y(w)) << "\" stroke=\"black\"/>\n";
            }
            svg << "<rect x=\"" << num(cx - half) << "\" y=\"" << num(y(b.q3)) << "\" width=\"" << num(2 * half)
                << "\" height=\"" << num(y(b.q1) - y(b.q3)) << "\" fill=\"#dbe8f6\" stroke=\"#1f4e99\"/>\n"
                << "<line x1=\"" << num(cx - half) << "\" y1=\"" << num(y(b.median)) << "\" x2=\"" << num(cx + half)
                << "\" y2=\"" << num(y(b.median)) << "\" stroke=\"red\" stroke-width=\"2\"/>\n";
            for (double o : b.outliers) {
                svg << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(y(o))
                    << "\" r=\"3\" fill=\"none\" stroke=\"red\"/>\n";
            }
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace fatune::cli
