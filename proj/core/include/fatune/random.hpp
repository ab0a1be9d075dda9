#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <string_view>

namespace fatune {

/// splitmix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stable 64-bit tag for a string (FNV-1a folded through mix64).
std::uint64_t hash_tag(std::string_view text) noexcept;

/// Combines a master seed with a path of tags into an independent substream
/// seed. Order matters: derive_seed(s, {a, b}) != derive_seed(s, {b, a}).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept;

/// Seeded pseudo-random stream (mt19937_64 underneath).
///
/// A stream is a single-owner object: copy it to fork an identical sequence,
/// derive a new seed to get an independent one. Two streams constructed from
/// the same seed produce bit-identical output on every platform, because all
/// transforms to doubles, bounded integers and normals are implemented here
/// rather than delegated to implementation-defined std distributions.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Standard normal variate (Box-Muller; the second variate of each pair
    /// is cached and returned by the next call).
    double normal();

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

/// One N(0,1) draw from the stream.
inline double standard_normal(RandomStream& stream) { return stream.normal(); }

} // namespace fatune
