#pragma once

#include "fatune/tuning.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fatune::cli {

/// A configuration problem tied to one key, written "section.key".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

enum class Preset { Paper, Desk };

std::string_view to_string(Preset preset) noexcept;

struct ExperimentConfig {
    Preset preset = Preset::Paper;
    TuningPlan plan = TuningPlan::paper();
    std::string output_dir = "fatune-out";
    std::size_t threads = 1;

    static ExperimentConfig from_preset(Preset preset);
    bool operator==(const ExperimentConfig&) const = default;
};

/// One "section.key = value" assignment from some configuration layer.
struct Setting {
    std::string key;
    std::string value;
};

/// Every recognised key in canonical order.
const std::vector<std::string>& config_keys();

/// Applies one assignment. Throws ConfigError naming the key when the key is
/// unknown or the value does not parse.
void apply_setting(ExperimentConfig& config, const Setting& setting);

/// Reads the sectioned key = value format. Throws ConfigError on unknown
/// keys or malformed lines.
std::vector<Setting> parse_config_text(std::string_view text);

/// Collects FATUNE_<SECTION>_<KEY> variables through `getenv`.
std::vector<Setting> settings_from_env(const std::function<const char*(const char*)>& getenv);

/// Layers are applied in order: the preset named by the last layer that
/// sets experiment.preset (default paper), then each layer's remaining keys.
ExperimentConfig resolve_config(const std::vector<std::vector<Setting>>& layers);

/// Full text form of a configuration; parse_config_text followed by
/// resolve_config reproduces it exactly.
std::string serialize_config(const ExperimentConfig& config);

} // namespace fatune::cli
