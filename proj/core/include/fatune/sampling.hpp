#pragma once

#include "fatune/random.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace fatune {

enum class SamplerKind { MC, QMC, LHS };

std::string_view to_string(SamplerKind kind) noexcept;
SamplerKind parse_sampler_kind(std::string_view text);

/// n x d matrix of points in the unit hypercube, row-major.
class UnitPointSet {
public:
    UnitPointSet() = default;
    UnitPointSet(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const { return {values_.data() + i * cols_, cols_}; }
    std::span<const double> values() const noexcept { return values_; }

    bool operator==(const UnitPointSet&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

struct Range {
    double low = 0.0;
    double high = 1.0;

    double width() const noexcept { return high - low; }
    bool operator==(const Range&) const = default;
};

/// Sampling box for the three tuned firefly parameters.
struct ParameterRanges {
    Range theta{0.9, 1.0};
    Range beta{0.0, 1.0};
    Range gamma{0.1, 2.5};

    /// Throws InvalidArgument unless low < high for every range.
    void validate() const;

    bool operator==(const ParameterRanges&) const = default;
};

/// One firefly setting: alpha decay factor, attractiveness and absorption.
struct ParameterSample {
    double theta = 0.97;
    double beta = 1.0;
    double gamma = 1.0;

    bool operator==(const ParameterSample&) const = default;
};

/// n x d independent uniforms in [0, 1).
UnitPointSet draw_mc(std::size_t n, std::size_t d, RandomStream& stream);

/// Latin hypercube: per dimension a random permutation picks the stratum of
/// each sample and a uniform offset places it inside the stratum.
UnitPointSet draw_lhs(std::size_t n, std::size_t d, RandomStream& stream);

/// First n points of the Sobol sequence from the built-in direction table,
/// optionally with an affine digital scramble (see sobol.hpp).
UnitPointSet draw_sobol(std::size_t n, std::size_t d, RandomStream& stream, bool scramble);

/// Dispatches on kind; QMC is always scrambled.
UnitPointSet draw(SamplerKind kind, std::size_t n, std::size_t d, RandomStream& stream);

/// Affine map of a 3-column point set onto (theta, beta, gamma).
std::vector<ParameterSample> scale_to_ranges(const UnitPointSet& points, const ParameterRanges& ranges);

} // namespace fatune
