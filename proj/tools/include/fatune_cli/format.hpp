#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fatune::cli {

/// Failure to read or write a file.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data absent or insufficient for the requested computation.
class MissingData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal text that reads back to the same double.
std::string format_real(double x);

/// Fixed 17-significant-digit text, as used in CSV tables. Non-finite
/// values print as inf, -inf and nan.
std::string format_csv(double x);

/// Inverse of format_csv / format_real.
double parse_real_text(std::string_view text);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

} // namespace fatune::cli
