#include "fatune/sampling.hpp"

#include "fatune/error.hpp"
#include "fatune/sobol.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace fatune {

std::string_view to_string(SamplerKind kind) noexcept {
    switch (kind) {
    case SamplerKind::MC: return "MC";
    case SamplerKind::QMC: return "QMC";
    case SamplerKind::LHS: return "LHS";
    }
    return "?";
}

SamplerKind parse_sampler_kind(std::string_view text) {
    if (text == "MC" || text == "mc") return SamplerKind::MC;
    if (text == "QMC" || text == "qmc") return SamplerKind::QMC;
    if (text == "LHS" || text == "lhs") return SamplerKind::LHS;
    throw InvalidArgument("unknown sampler kind '" + std::string(text) + "' (expected MC, QMC or LHS)");
}

void ParameterRanges::validate() const {
    auto check = [](const Range& r, const char* name) {
        if (!(r.low < r.high)) {
            throw InvalidArgument(std::string(name) + " range must satisfy low < high");
        }
    };
    check(theta, "theta");
    check(beta, "beta");
    check(gamma, "gamma");
}

namespace {

void require_shape(std::size_t n, std::size_t d, const char* who) {
    if (n == 0 || d == 0) {
        throw InvalidArgument(std::string(who) + ": sample count and dimension must be positive");
    }
}

} // namespace

UnitPointSet draw_mc(std::size_t n, std::size_t d, RandomStream& stream) {
    require_shape(n, d, "draw_mc");
    UnitPointSet points(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            points(i, j) = stream.uniform();
        }
    }
    return points;
}

UnitPointSet draw_lhs(std::size_t n, std::size_t d, RandomStream& stream) {
    require_shape(n, d, "draw_lhs");
    UnitPointSet points(n, d);
    std::vector<std::size_t> perm(n);
    const double width = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < d; ++j) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        // Fisher-Yates
        for (std::size_t i = n; i > 1; --i) {
            const auto k = static_cast<std::size_t>(stream.below(i));
            std::swap(perm[i - 1], perm[k]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            double v = (static_cast<double>(perm[i]) + stream.uniform()) * width;
            // (k + u)/n can round up to the next stratum edge when u is close to 1.
            const double edge = static_cast<double>(perm[i] + 1) * width;
            if (v >= edge) {
                v = std::nextafter(edge, 0.0);
            }
            points(i, j) = v;
        }
    }
    return points;
}

UnitPointSet draw_sobol(std::size_t n, std::size_t d, RandomStream& stream, bool scramble) {
    return draw_sobol(n, d, stream, scramble, SobolTable::builtin());
}

UnitPointSet draw(SamplerKind kind, std::size_t n, std::size_t d, RandomStream& stream) {
    switch (kind) {
    case SamplerKind::MC: return draw_mc(n, d, stream);
    case SamplerKind::QMC: return draw_sobol(n, d, stream, true);
    case SamplerKind::LHS: return draw_lhs(n, d, stream);
    }
    throw InvalidArgument("draw: bad sampler kind");
}

std::vector<ParameterSample> scale_to_ranges(const UnitPointSet& points, const ParameterRanges& ranges) {
    if (points.cols() != 3) {
        throw ShapeError("scale_to_ranges: expected 3 columns (theta, beta, gamma), got " +
                         std::to_string(points.cols()));
    }
    ranges.validate();
    auto map = [](double u, const Range& r) {
        const double v = r.low + u * r.width();
        // keep the interval half-open even when rounding lands on the top edge
        return v < r.high ? v : std::nextafter(r.high, r.low);
    };
    std::vector<ParameterSample> out;
    out.reserve(points.rows());
    for (std::size_t i = 0; i < points.rows(); ++i) {
        out.push_back({map(points(i, 0), ranges.theta), map(points(i, 1), ranges.beta),
                       map(points(i, 2), ranges.gamma)});
    }
    return out;
}

} // namespace fatune
