#include "fatune/error.hpp"
#include "fatune/sampling.hpp"
#include "fatune/sobol.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <sstream>
#include <vector>

using namespace fatune;

namespace {

void expect_unit_range(const UnitPointSet& p) {
    for (double v : p.values()) {
        ASSERT_GE(v, 0.0);
        ASSERT_LT(v, 1.0);
    }
}

// Each of the n equal-width bins of column j holds exactly one value.
bool stratified(const UnitPointSet& p, std::size_t j) {
    const std::size_t n = p.rows();
    std::vector<int> count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto bin = static_cast<std::size_t>(p(i, j) * static_cast<double>(n));
        if (bin >= n) return false;
        ++count[bin];
    }
    return std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
}

} // namespace

TEST(DrawMc, ShapeRangeAndDeterminism) {
    RandomStream a(42), b(42);
    const auto p = draw_mc(10, 3, a);
    EXPECT_EQ(p.rows(), 10u);
    EXPECT_EQ(p.cols(), 3u);
    expect_unit_range(p);
    EXPECT_EQ(p, draw_mc(10, 3, b));
}

TEST(DrawMc, MeanOfTenThousand) {
    RandomStream s(3);
    const auto p = draw_mc(10000, 1, s);
    double sum = 0.0;
    for (double v : p.values()) sum += v;
    EXPECT_NEAR(sum / 10000.0, 0.5, 0.02);
}

TEST(DrawMc, RejectsEmptyShapes) {
    RandomStream s(1);
    EXPECT_THROW(draw_mc(0, 3, s), InvalidArgument);
    EXPECT_THROW(draw_mc(3, 0, s), InvalidArgument);
}

TEST(DrawLhs, QuartilesHoldOneSampleEach) {
    RandomStream s(11);
    const auto p = draw_lhs(4, 2, s);
    EXPECT_TRUE(stratified(p, 0));
    EXPECT_TRUE(stratified(p, 1));
}

TEST(DrawLhs, SinglePoint) {
    RandomStream s(11);
    const auto p = draw_lhs(1, 3, s);
    ASSERT_EQ(p.rows(), 1u);
    expect_unit_range(p);
}

TEST(DrawLhs, Deterministic) {
    RandomStream a(7), b(7);
    EXPECT_EQ(draw_lhs(10, 3, a), draw_lhs(10, 3, b));
}

TEST(DrawLhs, RejectsZeroSamples) {
    RandomStream s(7);
    EXPECT_THROW(draw_lhs(0, 3, s), InvalidArgument);
}

TEST(DrawLhs, StratifiedForAssortedSizes) {
    for (std::size_t n : {1u, 4u, 10u, 100u, 997u}) {
        RandomStream s(n);
        const auto p = draw_lhs(n, 5, s);
        for (std::size_t j = 0; j < 5; ++j) EXPECT_TRUE(stratified(p, j)) << "n=" << n << " j=" << j;
    }
}

TEST(DrawSobol, FirstPointsOfDimensionOne) {
    RandomStream s(0);
    const auto p = draw_sobol(4, 1, s, false);
    const std::array<double, 4> expected{0.0, 0.5, 0.75, 0.25};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(p(i, 0), expected[i]);
}

TEST(DrawSobol, PrefixProperty) {
    RandomStream s(0);
    const auto four = draw_sobol(4, 1, s, false);
    const auto eight = draw_sobol(8, 1, s, false);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(four(i, 0), eight(i, 0));
}

// Rows frozen from scipy.stats.qmc.Sobol(d=10, scramble=False, bits=32),
// which uses the same Joe-Kuo direction numbers.
TEST(DrawSobol, MatchesReferenceImplementationInTenDimensions) {
    RandomStream s(0);
    const auto p = draw_sobol(1024, 10, s, false);
    const std::vector<std::pair<std::size_t, std::array<double, 10>>> rows{
        {4, {0.375, 0.375, 0.625, 0.875, 0.375, 0.125, 0.375, 0.875, 0.875, 0.625}},
        {7, {0.125, 0.625, 0.375, 0.125, 0.125, 0.375, 0.625, 0.625, 0.625, 0.875}},
        {11, {0.4375, 0.5625, 0.1875, 0.6875, 0.8125, 0.0625, 0.6875, 0.6875, 0.6875, 0.0625}},
        {777,
         {0.6923828125, 0.9365234375, 0.1630859375, 0.2744140625, 0.6357421875, 0.3564453125, 0.1904296875,
          0.7626953125, 0.3486328125, 0.3232421875}},
        {1023,
         {0.0009765625, 0.7529296875, 0.6123046875, 0.1455078125, 0.1865234375, 0.4384765625, 0.1396484375,
          0.6181640625, 0.3447265625, 0.8505859375}},
    };
    for (const auto& [i, expected] : rows) {
        for (std::size_t j = 0; j < 10; ++j) EXPECT_EQ(p(i, j), expected[j]) << "row " << i << " dim " << j;
    }
}

TEST(DrawSobol, UnscrambledDyadicBins) {
    RandomStream s(0);
    for (unsigned k : {1u, 3u, 6u, 10u}) {
        const std::size_t n = std::size_t{1} << k;
        EXPECT_TRUE(stratified(draw_sobol(n, 1, s, false), 0)) << "k=" << k;
    }
}

TEST(DrawSobol, ScrambledKeepsOneDimensionalNet) {
    RandomStream s(123);
    const auto p = draw_sobol(1024, 2, s, true);
    expect_unit_range(p);
    EXPECT_TRUE(stratified(p, 0));
    EXPECT_TRUE(stratified(p, 1));
}

TEST(DrawSobol, ScrambleDisplacesOrigin) {
    RandomStream s(5);
    const auto p = draw_sobol(8, 4, s, true);
    bool all_zero = true;
    for (std::size_t j = 0; j < 4; ++j) all_zero = all_zero && p(0, j) == 0.0;
    EXPECT_FALSE(all_zero);
}

TEST(DrawSobol, ScrambledDeterministicPerSeed) {
    RandomStream a(99), b(99), c(100);
    const auto pa = draw_sobol(64, 5, a, true);
    EXPECT_EQ(pa, draw_sobol(64, 5, b, true));
    EXPECT_NE(pa, draw_sobol(64, 5, c, true));
}

TEST(DrawSobol, UnsupportedDimension) {
    RandomStream s(0);
    const auto max_d = SobolTable::builtin().max_dimension();
    EXPECT_GE(max_d, 10u);
    EXPECT_NO_THROW(draw_sobol(2, max_d, s, true));
    EXPECT_THROW(draw_sobol(2, max_d + 1, s, false), UnsupportedDimension);
}

TEST(SobolTable, ParsesTextAndRejectsBadRows) {
    std::istringstream good("# comment\n1 0 0\n2 1 0 1\n3 2 1 1 3\n");
    const auto t = SobolTable::parse(good);
    EXPECT_EQ(t.max_dimension(), 3u);
    EXPECT_EQ(t.dimension(2).degree, 2u);

    std::istringstream even_m("1 0 0\n2 1 0 2\n");
    EXPECT_THROW(SobolTable::parse(even_m), InvalidArgument);
    std::istringstream skipped("1 0 0\n3 1 0 1\n");
    EXPECT_THROW(SobolTable::parse(skipped), InvalidArgument);
    std::istringstream truncated("1 0 0\n2 2 1 1\n");
    EXPECT_THROW(SobolTable::parse(truncated), InvalidArgument);
}

TEST(SamplerProperties, AllKindsStayInUnitCube) {
    RandomStream gen(31337);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + gen.below(10000);
        const std::size_t d = 1 + gen.below(10);
        RandomStream s(gen.next_u64());
        expect_unit_range(draw_mc(n, d, s));
        expect_unit_range(draw_lhs(n, d, s));
        expect_unit_range(draw_sobol(n, d, s, true));
        expect_unit_range(draw_sobol(n, d, s, false));
    }
}

TEST(ScaleToRanges, MidpointAndCorners) {
    const ParameterRanges ranges;
    UnitPointSet p(3, 3);
    for (std::size_t j = 0; j < 3; ++j) {
        p(0, j) = 0.5;
        p(1, j) = 0.0;
        p(2, j) = std::nextafter(1.0, 0.0);
    }
    const auto s = scale_to_ranges(p, ranges);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_DOUBLE_EQ(s[0].theta, 0.95);
    EXPECT_DOUBLE_EQ(s[0].beta, 0.5);
    EXPECT_DOUBLE_EQ(s[0].gamma, 1.3);
    EXPECT_EQ(s[1].theta, 0.9);
    EXPECT_EQ(s[1].beta, 0.0);
    EXPECT_EQ(s[1].gamma, 0.1);
    EXPECT_LT(s[2].theta, 1.0);
    EXPECT_LT(s[2].beta, 1.0);
    EXPECT_LT(s[2].gamma, 2.5);
}

TEST(ScaleToRanges, SymmetricAboutMidpoint) {
    const ParameterRanges ranges;
    RandomStream s(8);
    const auto u = draw_mc(200, 3, s);
    UnitPointSet mirrored(u.rows(), 3);
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < 3; ++j) mirrored(i, j) = 1.0 - u(i, j);
    const auto a = scale_to_ranges(u, ranges);
    const auto b = scale_to_ranges(mirrored, ranges);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a[i].theta + b[i].theta, 1.9, 1e-12);
        EXPECT_NEAR(a[i].beta + b[i].beta, 1.0, 1e-12);
        EXPECT_NEAR(a[i].gamma + b[i].gamma, 2.6, 1e-12);
    }
}

TEST(ScaleToRanges, RejectsWrongColumnCount) {
    EXPECT_THROW(scale_to_ranges(UnitPointSet(2, 2), ParameterRanges{}), ShapeError);
}

TEST(SamplerKind, RoundTripsThroughText) {
    for (auto k : {SamplerKind::MC, SamplerKind::QMC, SamplerKind::LHS}) {
        EXPECT_EQ(parse_sampler_kind(to_string(k)), k);
    }
    EXPECT_THROW(parse_sampler_kind("halton"), InvalidArgument);
}
