#pragma once

#include "fatune/tuning.hpp"
#include "fatune_cli/config.hpp"

#include <string>
#include <string_view>

namespace fatune::cli {

/// Hex SHA-1 of "blob <size>\0" + content, the object id git assigns to a
/// file with this content.
std::string git_blob_sha1(std::string_view content);

/// The JSON report: format tag, config echo (everything that affects the
/// numbers, but not threads or output_dir), problems, cells and a
/// content_hash over the rest of the document.
std::string report_to_json(const ExperimentReport& report, Preset preset);

struct LoadedReport {
    ExperimentReport report;
    Preset preset = Preset::Paper;
    std::string content_hash;
    bool hash_matches = false;
};

/// Throws MissingData when the text is not a well-formed report.
LoadedReport report_from_json(std::string_view text);

} // namespace fatune::cli
