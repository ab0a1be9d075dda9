#pragma once

#include "fatune/random.hpp"
#include "fatune/sampling.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <vector>

namespace fatune {

inline constexpr unsigned kSobolBits = 32;

/// Primitive polynomial and initial direction integers of one dimension.
/// degree == 0 marks the van der Corput dimension (identity generator).
struct SobolDimension {
    unsigned degree = 0;
    std::uint32_t coefficient_mask = 0;
    std::vector<std::uint32_t> initial;
};

/// Direction-number table, one line per dimension:
///
///     <dimension> <degree> <coefficient-mask> <m_1> ... <m_degree>
///
/// Blank lines and lines starting with '#' are ignored. Dimensions must be
/// listed in order starting at 1.
class SobolTable {
public:
    static SobolTable parse(std::istream& in);
    static SobolTable load(const std::filesystem::path& path);

    /// Joe-Kuo table compiled into the library.
    static const SobolTable& builtin();

    std::size_t max_dimension() const noexcept { return dims_.size(); }
    const SobolDimension& dimension(std::size_t index) const { return dims_.at(index); }

    /// Direction integers v_1..v_32 of a dimension, most significant bit first.
    std::array<std::uint32_t, kSobolBits> direction_vectors(std::size_t index) const;

private:
    std::vector<SobolDimension> dims_;
};

/// Sobol points via the Gray-code recursion. When scramble is set, each
/// dimension gets a random lower-triangular unit-diagonal binary matrix
/// applied to its direction integers (linear matrix scramble) followed by a
/// random digital shift XORed onto every point. Scrambling keeps every
/// elementary-interval property of the unscrambled net.
UnitPointSet draw_sobol(std::size_t n, std::size_t d, RandomStream& stream, bool scramble,
                        const SobolTable& table);

} // namespace fatune
