#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sdelab {

/// Parse or schema error located in a configuration source.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& source, std::size_t line, std::size_t column, const std::string& message);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

struct ConfigValue {
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
};

/// Sections of key = value pairs; top-level keys live in section "".
struct ConfigDocument {
    std::string source;
    std::map<std::string, std::map<std::string, ConfigValue>> sections;
    std::map<std::string, std::size_t> section_lines;
};

/// INI-style text: '#' or ';' comments, [section] headers, key = value.
ConfigDocument parse_ini(std::string_view text, const std::string& source = "<config>");
/// JSON object; scalars at the top level, nested objects become sections.
ConfigDocument parse_json_config(std::string_view text, const std::string& source = "<config>");
/// Chooses the JSON reader for a .json file or text starting with '{'.
ConfigDocument load_config(const std::filesystem::path& path);
ConfigDocument parse_config_text(std::string_view text, const std::string& source = "<config>");

struct ModelSpec {
    /// bm, ou, gbm or gradient; empty means the experiment default.
    std::string preset;
    std::map<std::string, double> params;
    /// U(x) for the gradient preset.
    std::string potential;
};

struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 1;
    std::optional<std::string> output;
    ModelSpec model;
    std::map<std::string, double> params;
    std::string source = "<config>";
};

/// Validated against the experiment's schema: unknown sections or keys,
/// malformed numbers and out-of-range values raise ConfigError. Missing
/// parameters take the schema defaults.
ExperimentConfig to_experiment_config(const ConfigDocument& doc);

/// Canonical text of a resolved configuration (output location excluded).
std::string canonical_text(const ExperimentConfig& cfg);

}  // namespace sdelab
