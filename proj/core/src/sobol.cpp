#include "fatune/sobol.hpp"

#include "fatune/error.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <string>

namespace fatune {

namespace detail {
extern const char* const kSobolDirectionText;
}

SobolTable SobolTable::parse(std::istream& in) {
    SobolTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::size_t dim = 0;
        SobolDimension entry;
        if (!(fields >> dim >> entry.degree >> entry.coefficient_mask)) {
            throw InvalidArgument("sobol table line " + std::to_string(line_no) + ": malformed header");
        }
        if (dim != table.dims_.size() + 1) {
            throw InvalidArgument("sobol table line " + std::to_string(line_no) + ": dimensions out of order");
        }
        if (entry.degree > 0 && entry.coefficient_mask >= (1u << (entry.degree - 1))) {
            throw InvalidArgument("sobol table line " + std::to_string(line_no) + ": mask wider than degree");
        }
        for (unsigned k = 0; k < entry.degree; ++k) {
            std::uint32_t m = 0;
            if (!(fields >> m)) {
                throw InvalidArgument("sobol table line " + std::to_string(line_no) +
                                      ": missing initial direction integer");
            }
            // m_k must be odd and below 2^k (k counted from 1)
            if ((m & 1u) == 0 || (k + 1 < 32 && m >= (1u << (k + 1)))) {
                throw InvalidArgument("sobol table line " + std::to_string(line_no) +
                                      ": invalid direction integer");
            }
            entry.initial.push_back(m);
        }
        table.dims_.push_back(std::move(entry));
    }
    if (table.dims_.empty()) {
        throw InvalidArgument("sobol table is empty");
    }
    return table;
}

SobolTable SobolTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open sobol table " + path.string());
    }
    return parse(in);
}

const SobolTable& SobolTable::builtin() {
    static const SobolTable table = [] {
        std::istringstream in(detail::kSobolDirectionText);
        return parse(in);
    }();
    return table;
}

std::array<std::uint32_t, kSobolBits> SobolTable::direction_vectors(std::size_t index) const {
    const SobolDimension& dim = dims_.at(index);
    std::array<std::uint32_t, kSobolBits> v{};
    const unsigned s = dim.degree;
    if (s == 0) {
        for (unsigned k = 0; k < kSobolBits; ++k) {
            v[k] = 1u << (kSobolBits - 1 - k);
        }
        return v;
    }
    for (unsigned k = 0; k < s && k < kSobolBits; ++k) {
        v[k] = dim.initial[k] << (kSobolBits - 1 - k);
    }
    for (unsigned k = s; k < kSobolBits; ++k) {
        v[k] = v[k - s] ^ (v[k - s] >> s);
        for (unsigned l = 1; l < s; ++l) {
            if ((dim.coefficient_mask >> (s - 1 - l)) & 1u) {
                v[k] ^= v[k - l];
            }
        }
    }
    return v;
}

namespace {

std::uint32_t random_word(RandomStream& stream) { return static_cast<std::uint32_t>(stream.next_u64() >> 32); }

// Multiply the bit-vector v by a random lower-triangular matrix with unit
// diagonal. Column for input bit b (b = 31 is the most significant) keeps
// bit b and gets random bits strictly below it.
void linear_scramble(std::array<std::uint32_t, kSobolBits>& v, RandomStream& stream) {
    std::array<std::uint32_t, kSobolBits> column{};
    for (unsigned b = kSobolBits; b-- > 0;) {
        const std::uint32_t below = (b == 0) ? 0u : ((1u << b) - 1u);
        column[b] = (1u << b) | (random_word(stream) & below);
    }
    for (auto& word : v) {
        std::uint32_t out = 0;
        for (std::uint32_t bits = word; bits != 0; bits &= bits - 1) {
            out ^= column[static_cast<unsigned>(std::countr_zero(bits))];
        }
        word = out;
    }
}

} // namespace

UnitPointSet draw_sobol(std::size_t n, std::size_t d, RandomStream& stream, bool scramble,
                        const SobolTable& table) {
    if (n == 0 || d == 0) {
        throw InvalidArgument("draw_sobol: sample count and dimension must be positive");
    }
    if (d > table.max_dimension()) {
        throw UnsupportedDimension("draw_sobol: dimension " + std::to_string(d) + " exceeds table maximum " +
                                   std::to_string(table.max_dimension()));
    }
    if (n > (std::size_t{1} << kSobolBits)) {
        throw InvalidArgument("draw_sobol: at most 2^32 points per sequence");
    }

    UnitPointSet points(n, d);
    constexpr double scale = 0x1.0p-32;
    for (std::size_t j = 0; j < d; ++j) {
        auto v = table.direction_vectors(j);
        std::uint32_t x = 0;
        if (scramble) {
            linear_scramble(v, stream);
            x = random_word(stream);
        }
        points(0, j) = static_cast<double>(x) * scale;
        for (std::size_t i = 1; i < n; ++i) {
            x ^= v[static_cast<unsigned>(std::countr_zero(i))];
            points(i, j) = static_cast<double>(x) * scale;
        }
    }
    return points;
}

} // namespace fatune
