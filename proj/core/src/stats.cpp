#include "fatune/stats.hpp"

#include "fatune/error.hpp"
#include "fatune/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace fatune::stats {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_sample(std::span<const double> x, const char* who) {
    if (x.size() < 2) {
        throw InvalidArgument(std::string(who) + ": samples need at least two values");
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw InvalidArgument(std::string(who) + ": samples must be finite");
    }
}

void require_block(const BlockMatrix& m, const char* who) {
    if (m.rows() < 2 || m.cols() < 2) {
        throw InvalidArgument(std::string(who) + ": need at least 2 rows and 2 columns");
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (!std::isfinite(m(r, c))) throw InvalidArgument(std::string(who) + ": values must be finite");
        }
    }
}

// Two-sided p-value of a t statistic.
double t_two_sided(double t, double df) { return std::min(1.0, 2.0 * t_sf(std::fabs(t), df)); }

TestResult degenerate_t(TestKind kind, double numerator, double df) {
    TestResult r;
    r.kind = kind;
    r.df1 = df;
    r.degenerate = true;
    if (numerator == 0.0) {
        r.statistic = 0.0;
        r.p_value = 1.0;
    } else {
        r.statistic = numerator > 0 ? kInf : -kInf;
        r.p_value = 0.0;
    }
    return r;
}

} // namespace

std::string_view to_string(TestKind kind) noexcept {
    switch (kind) {
    case TestKind::WelchT: return "welch_t";
    case TestKind::PairedT: return "paired_t";
    case TestKind::FVariance: return "f_variance";
    case TestKind::Friedman: return "friedman";
    case TestKind::AnovaRows: return "anova_rows";
    case TestKind::AnovaColumns: return "anova_columns";
    }
    return "?";
}

BlockMatrix::BlockMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

BlockMatrix BlockMatrix::from_columns(const std::vector<std::vector<double>>& columns) {
    if (columns.empty()) throw ShapeError("BlockMatrix::from_columns: no columns");
    const std::size_t n = columns.front().size();
    BlockMatrix m(n, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != n) throw ShapeError("BlockMatrix::from_columns: ragged columns");
        for (std::size_t r = 0; r < n; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

double mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size() - 1);
}

double sample_sd(std::span<const double> x) { return std::sqrt(sample_variance(x)); }

TestResult two_sample_t(std::span<const double> x, std::span<const double> y) {
    require_sample(x, "two_sample_t");
    require_sample(y, "two_sample_t");
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    const double qx = sample_variance(x) / nx;
    const double qy = sample_variance(y) / ny;
    const double diff = mean(x) - mean(y);
    const double se2 = qx + qy;
    if (se2 == 0.0) {
        return degenerate_t(TestKind::WelchT, diff, nx + ny - 2.0);
    }
    TestResult r;
    r.kind = TestKind::WelchT;
    r.statistic = diff / std::sqrt(se2);
    r.df1 = se2 * se2 / (qx * qx / (nx - 1.0) + qy * qy / (ny - 1.0));
    r.p_value = t_two_sided(r.statistic, r.df1);
    return r;
}

TestResult paired_t(std::span<const double> x, std::span<const double> y) {
    require_sample(x, "paired_t");
    require_sample(y, "paired_t");
    if (x.size() != y.size()) throw ShapeError("paired_t: samples must have equal length");
    std::vector<double> d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    const double n = static_cast<double>(d.size());
    const double md = mean(d);
    const double sd = sample_sd(d);
    if (sd == 0.0) {
        return degenerate_t(TestKind::PairedT, md, n - 1.0);
    }
    TestResult r;
    r.kind = TestKind::PairedT;
    r.statistic = md / (sd / std::sqrt(n));
    r.df1 = n - 1.0;
    r.p_value = t_two_sided(r.statistic, r.df1);
    return r;
}

TestResult f_test_variance(std::span<const double> x, std::span<const double> y) {
    require_sample(x, "f_test_variance");
    require_sample(y, "f_test_variance");
    const double vx = sample_variance(x);
    const double vy = sample_variance(y);
    if (vx == 0.0 || vy == 0.0) {
        throw DegenerateVariance("f_test_variance: a sample has zero variance");
    }
    TestResult r;
    r.kind = TestKind::FVariance;
    r.statistic = vx / vy;
    r.df1 = static_cast<double>(x.size() - 1);
    r.df2 = static_cast<double>(y.size() - 1);
    const double lower = f_cdf(r.statistic, r.df1, r.df2);
    const double upper = f_sf(r.statistic, r.df1, r.df2);
    r.p_value = std::min(1.0, 2.0 * std::min(lower, upper));
    return r;
}

TestResult friedman(const BlockMatrix& data) {
    require_block(data, "friedman");
    const std::size_t n = data.rows();
    const std::size_t k = data.cols();
    std::vector<double> rank_sums(k, 0.0);
    double tie_sum = 0.0; // sum over tie groups of t^3 - t

    std::vector<std::size_t> order(k);
    for (std::size_t r = 0; r < n; ++r) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return data(r, a) < data(r, b); });
        std::size_t i = 0;
        while (i < k) {
            std::size_t j = i + 1;
            while (j < k && data(r, order[j]) == data(r, order[i])) ++j;
            // positions i..j-1 share the average of ranks i+1..j
            const double avg = 0.5 * static_cast<double>(i + 1 + j);
            for (std::size_t q = i; q < j; ++q) rank_sums[order[q]] += avg;
            const double t = static_cast<double>(j - i);
            tie_sum += t * t * t - t;
            i = j;
        }
    }

    const double dn = static_cast<double>(n);
    const double dk = static_cast<double>(k);
    TestResult res;
    res.kind = TestKind::Friedman;
    res.df1 = dk - 1.0;

    const double correction = 1.0 - tie_sum / (dn * (dk * dk * dk - dk));
    if (correction <= 0.0) {
        // every row is fully tied
        res.statistic = 0.0;
        res.p_value = 1.0;
        res.degenerate = true;
        return res;
    }
    double sum_sq = 0.0;
    for (double rs : rank_sums) sum_sq += rs * rs;
    double stat = 12.0 / (dn * dk * (dk + 1.0)) * sum_sq - 3.0 * dn * (dk + 1.0);
    stat = std::max(0.0, stat / correction);
    res.statistic = stat;
    res.p_value = std::clamp(chi2_sf(stat, res.df1), 0.0, 1.0);
    return res;
}

AnovaResult two_way_anova(const BlockMatrix& data) {
    require_block(data, "two_way_anova");
    const std::size_t n = data.rows();
    const std::size_t k = data.cols();
    const double dn = static_cast<double>(n);
    const double dk = static_cast<double>(k);

    std::vector<double> row_mean(n, 0.0);
    std::vector<double> col_mean(k, 0.0);
    double grand = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < k; ++c) {
            row_mean[r] += data(r, c);
            col_mean[c] += data(r, c);
            grand += data(r, c);
        }
    }
    for (double& m : row_mean) m /= dk;
    for (double& m : col_mean) m /= dn;
    grand /= dn * dk;

    AnovaResult out;
    for (std::size_t r = 0; r < n; ++r) out.ss_rows += dk * (row_mean[r] - grand) * (row_mean[r] - grand);
    for (std::size_t c = 0; c < k; ++c) out.ss_columns += dn * (col_mean[c] - grand) * (col_mean[c] - grand);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < k; ++c) {
            const double dev = data(r, c) - grand;
            const double resid = data(r, c) - row_mean[r] - col_mean[c] + grand;
            out.ss_total += dev * dev;
            out.ss_error += resid * resid;
        }
    }

    const double df_rows = dn - 1.0;
    const double df_cols = dk - 1.0;
    const double df_err = df_rows * df_cols;
    const double ms_err = out.ss_error / df_err;
    const double eps = std::numeric_limits<double>::epsilon();
    const bool zero_error = out.ss_error <= eps * eps * out.ss_total || out.ss_error == 0.0;

    auto effect = [&](TestKind kind, double ss, double df) {
        TestResult r;
        r.kind = kind;
        r.df1 = df;
        r.df2 = df_err;
        const double ms = ss / df;
        if (zero_error) {
            r.degenerate = true;
            const bool zero_effect = ss <= eps * eps * out.ss_total || ss == 0.0;
            r.statistic = zero_effect ? 0.0 : kInf;
            r.p_value = zero_effect ? 1.0 : 0.0;
            return r;
        }
        r.statistic = ms / ms_err;
        r.p_value = std::clamp(f_sf(r.statistic, df, df_err), 0.0, 1.0);
        return r;
    };
    out.rows = effect(TestKind::AnovaRows, out.ss_rows, df_rows);
    out.columns = effect(TestKind::AnovaColumns, out.ss_columns, df_cols);
    return out;
}

} // namespace fatune::stats
