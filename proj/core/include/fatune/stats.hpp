#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace fatune::stats {

enum class TestKind { WelchT, PairedT, FVariance, Friedman, AnovaRows, AnovaColumns };

std::string_view to_string(TestKind kind) noexcept;

/// Outcome of one hypothesis test. df2 is zero for single-df statistics.
/// `degenerate` marks boundary conventions (zero standard error, zero error
/// mean square) where p is set to exactly 0 or 1 instead of coming from a
/// distribution function.
struct TestResult {
    TestKind kind = TestKind::WelchT;
    double statistic = 0.0;
    double df1 = 0.0;
    double df2 = 0.0;
    double p_value = 1.0;
    bool degenerate = false;
};

/// n blocks (rows) x k treatments (columns), row-major.
class BlockMatrix {
public:
    BlockMatrix(std::size_t rows, std::size_t cols);
    /// One inner vector per column (treatment); all must have equal length.
    static BlockMatrix from_columns(const std::vector<std::vector<double>>& columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
};

double mean(std::span<const double> x);
/// Sample variance with the n - 1 divisor; zero for fewer than two values.
double sample_variance(std::span<const double> x);
double sample_sd(std::span<const double> x);

/// Unequal-variance two-sample t-test with Welch-Satterthwaite df, two-sided.
TestResult two_sample_t(std::span<const double> x, std::span<const double> y);

/// One-sample t-test on x_i - y_i with N - 1 df, two-sided.
TestResult paired_t(std::span<const double> x, std::span<const double> y);

/// F = S_x^2 / S_y^2 on (N_x - 1, N_y - 1) df; p = 2 min(CDF, 1 - CDF).
/// Throws DegenerateVariance when either sample variance is zero.
TestResult f_test_variance(std::span<const double> x, std::span<const double> y);

/// Friedman rank test over the columns with average ranks for ties and the
/// usual tie correction; chi-square approximation with k - 1 df.
TestResult friedman(const BlockMatrix& data);

struct AnovaResult {
    TestResult rows;
    TestResult columns;
    double ss_rows = 0.0;
    double ss_columns = 0.0;
    double ss_error = 0.0;
    double ss_total = 0.0;
};

/// Two-way ANOVA without replication.
AnovaResult two_way_anova(const BlockMatrix& data);

} // namespace fatune::stats
