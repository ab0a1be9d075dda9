#pragma once

#include "fatune/tuning.hpp"
#include "fatune_cli/tables.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fatune::cli {

/// Linear interpolation between closest ranks (Hyndman-Fan type 7) on an
/// ascending sample.
double quantile_type7(std::span<const double> sorted, double p);

struct BoxSummary {
    std::size_t count = 0;
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
    /// Most extreme values within 1.5 IQR of the quartiles.
    double whisker_low = 0, whisker_high = 0;
    std::vector<double> outliers;
};

/// Throws InvalidArgument on an empty sample.
BoxSummary summarize_box(std::vector<double> values);

struct BoxSeries {
    std::string label;
    std::vector<double> values;
};

struct BoxPanel {
    std::string title;
    std::vector<BoxSeries> series;
};

/// One panel per parameter, one series per method, values taken from the
/// best parameters of every problem.
std::vector<BoxPanel> parameter_panels(const ExperimentReport& report);

/// parameter,method,count,min,q1,median,q3,max,whisker_low,whisker_high,outliers
/// Series with fewer than two values are left out and named in `skipped`.
CsvTable boxplot_table(const std::vector<BoxPanel>& panels, std::vector<std::string>* skipped = nullptr);

/// Standalone SVG with one box-and-whisker chart per panel.
std::string render_boxplot_svg(const std::vector<BoxPanel>& panels);

} // namespace fatune::cli
