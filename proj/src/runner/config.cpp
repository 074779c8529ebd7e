#include "sdelab/runner/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sdelab/runner/experiments.hpp"
#include "sdelab/runner/expression.hpp"

namespace sdelab {

ConfigError::ConfigError(const std::string& source, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

std::string_view trim(std::string_view s, std::size_t& offset) {
    std::size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    std::size_t e = s.size();
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    offset = b;
    return s.substr(b, e - b);
}

bool valid_name(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
    }
    return true;
}

}  // namespace

ConfigDocument parse_ini(std::string_view text, const std::string& source) {
    ConfigDocument doc;
    doc.source = source;
    doc.sections[""];
    std::string section;
    std::size_t line_no = 0, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view raw = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        std::size_t off = 0;
        std::string_view line = trim(raw, off);
        if (line.empty() || line[0] == '#' || line[0] == ';') {
            if (end == text.size()) break;
            continue;
        }
        if (line[0] == '[') {
            if (line.back() != ']') throw ConfigError(source, line_no, off + line.size(), "expected ']' to close section");
            std::size_t inner_off = 0;
            const auto name = trim(line.substr(1, line.size() - 2), inner_off);
            if (!valid_name(name)) throw ConfigError(source, line_no, off + 2 + inner_off, "invalid section name");
            section = std::string(name);
            if (doc.sections.count(section) && doc.section_lines.count(section))
                throw ConfigError(source, line_no, off + 1, "duplicate section [" + section + "]");
            doc.sections[section];
            doc.section_lines[section] = line_no;
        } else {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) throw ConfigError(source, line_no, off + 1, "expected 'key = value'");
            std::size_t key_off = 0, val_off = 0;
            const auto key = trim(line.substr(0, eq), key_off);
            auto value = trim(line.substr(eq + 1), val_off);
            if (!valid_name(key)) throw ConfigError(source, line_no, off + key_off + 1, "invalid key");
            if (value.empty()) throw ConfigError(source, line_no, off + eq + 2, "missing value for '" + std::string(key) + "'");
            if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
                value = value.substr(1, value.size() - 2);
                ++val_off;
            }
            auto& sec = doc.sections[section];
            if (sec.count(std::string(key)))
                throw ConfigError(source, line_no, off + key_off + 1, "duplicate key '" + std::string(key) + "'");
            sec[std::string(key)] = ConfigValue{std::string(value), line_no, off + eq + 2 + val_off};
        }
        if (end == text.size()) break;
    }
    return doc;
}

ConfigDocument parse_json_config(std::string_view text, const std::string& source) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Convert the byte offset into line and column.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(source, line, col, "invalid JSON");
    }
    if (!j.is_object()) throw ConfigError(source, 1, 1, "top level must be an object");
    ConfigDocument doc;
    doc.source = source;
    doc.sections[""];
    const auto scalar = [&](const nlohmann::json& v, const std::string& key) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        if (v.is_number()) {
            char buf[32];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v.get<double>());
            return std::string(buf, ptr);
        }
        throw ConfigError(source, 1, 1, "value of '" + key + "' must be a string or number");
    };
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            auto& sec = doc.sections[key];
            doc.section_lines[key] = 1;
            for (const auto& [k, v] : value.items()) sec[k] = ConfigValue{scalar(v, key + "." + k), 1, 1};
        } else {
            doc.sections[""][key] = ConfigValue{scalar(value, key), 1, 1};
        }
    }
    return doc;
}

ConfigDocument parse_config_text(std::string_view text, const std::string& source) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == '{') return parse_json_config(text, source);
    return parse_ini(text, source);
}

ConfigDocument load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string(), 0, 0, "cannot open configuration file");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    if (path.extension() == ".json") return parse_json_config(text, path.string());
    return parse_config_text(text, path.string());
}

namespace {

double parse_number(const ConfigDocument& doc, const std::string& key, const ConfigValue& v) {
    double out = 0.0;
    const char* b = v.text.data();
    const char* e = b + v.text.size();
    auto [ptr, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || ptr != e || !std::isfinite(out))
        throw ConfigError(doc.source, v.line, v.column, "'" + key + "' expects a number, got '" + v.text + "'");
    return out;
}

void check_range(const ConfigDocument& doc, const ParamSpec& spec, const ConfigValue& v, double x) {
    if (x < spec.min || x > spec.max)
        throw ConfigError(doc.source, v.line, v.column,
                          "'" + spec.name + "' must lie in [" + std::to_string(spec.min) + ", " +
                              std::to_string(spec.max) + "]");
    if (spec.integer && std::floor(x) != x)
        throw ConfigError(doc.source, v.line, v.column, "'" + spec.name + "' must be an integer");
}

}  // namespace

ExperimentConfig to_experiment_config(const ConfigDocument& doc) {
    ExperimentConfig cfg;
    cfg.source = doc.source;
    const auto& top = doc.sections.at("");
    const auto exp_it = top.find("experiment");
    if (exp_it == top.end()) throw ConfigError(doc.source, 1, 1, "missing 'experiment'");
    const Experiment* exp = nullptr;
    try {
        exp = &find_experiment(exp_it->second.text);
    } catch (const std::out_of_range&) {
        throw ConfigError(doc.source, exp_it->second.line, exp_it->second.column,
                          "unknown experiment '" + exp_it->second.text + "'");
    }
    cfg.experiment = exp->name;
    for (const auto& [key, value] : top) {
        if (key == "experiment") continue;
        if (key == "seed") {
            std::uint64_t s = 0;
            auto [ptr, ec] = std::from_chars(value.text.data(), value.text.data() + value.text.size(), s);
            if (ec != std::errc() || ptr != value.text.data() + value.text.size())
                throw ConfigError(doc.source, value.line, value.column, "'seed' expects a nonnegative integer");
            cfg.seed = s;
        } else if (key == "output") {
            cfg.output = value.text;
        } else {
            throw ConfigError(doc.source, value.line, value.column, "unknown key '" + key + "'");
        }
    }
    for (const auto& [name, sec] : doc.sections) {
        if (name.empty() || name == "model" || name == "params") continue;
        const auto line = doc.section_lines.count(name) ? doc.section_lines.at(name) : 1;
        throw ConfigError(doc.source, line, 1, "unknown section [" + name + "]");
    }

    for (const auto& spec : exp->params) cfg.params[spec.name] = spec.default_value;
    if (const auto it = doc.sections.find("params"); it != doc.sections.end()) {
        for (const auto& [key, value] : it->second) {
            const auto spec = std::find_if(exp->params.begin(), exp->params.end(),
                                           [&](const ParamSpec& p) { return p.name == key; });
            if (spec == exp->params.end())
                throw ConfigError(doc.source, value.line, value.column,
                                  "unknown parameter '" + key + "' for experiment " + exp->name);
            const double x = parse_number(doc, key, value);
            check_range(doc, *spec, value, x);
            cfg.params[key] = x;
        }
    }

    if (!exp->presets.empty()) {
        cfg.model.preset = exp->presets.front();
        cfg.model.potential = exp->default_potential;
    }
    std::map<std::string, ConfigValue> model_keys;
    if (const auto it = doc.sections.find("model"); it != doc.sections.end()) model_keys = it->second;
    if (!model_keys.empty() && exp->presets.empty()) {
        const auto& v = model_keys.begin()->second;
        throw ConfigError(doc.source, v.line, v.column, "experiment " + exp->name + " has a fixed model");
    }
    if (const auto it = model_keys.find("preset"); it != model_keys.end()) {
        if (std::find(exp->presets.begin(), exp->presets.end(), it->second.text) == exp->presets.end())
            throw ConfigError(doc.source, it->second.line, it->second.column,
                              "preset '" + it->second.text + "' is not available for " + exp->name);
        cfg.model.preset = it->second.text;
    }
    if (!cfg.model.preset.empty()) {
        const auto& allowed = preset_parameters(cfg.model.preset);
        cfg.model.params = allowed;
        if (cfg.model.preset == exp->presets.front()) {
            for (const auto& [k, v] : exp->model_defaults) cfg.model.params[k] = v;
        }
        for (const auto& [key, value] : model_keys) {
            if (key == "preset") continue;
            if (key == "potential" && cfg.model.preset == "gradient") {
                try {
                    (void)Expression::parse(value.text).derivative().derivative();
                } catch (const ExpressionError& e) {
                    throw ConfigError(doc.source, value.line, value.column + (e.column() ? e.column() - 1 : 0), e.what());
                }
                cfg.model.potential = value.text;
                continue;
            }
            if (!allowed.count(key))
                throw ConfigError(doc.source, value.line, value.column,
                                  "unknown key '" + key + "' for model preset " + cfg.model.preset);
            cfg.model.params[key] = parse_number(doc, key, value);
        }
        if (cfg.model.preset == "bm") {
            const double d = cfg.model.params.at("dim");
            if (d < 1 || d > 8 || std::floor(d) != d) {
                const auto it = model_keys.find("dim");
                throw ConfigError(doc.source, it != model_keys.end() ? it->second.line : 1,
                                  it != model_keys.end() ? it->second.column : 1, "'dim' must be an integer in [1, 8]");
            }
        }
    }
    return cfg;
}

std::string canonical_text(const ExperimentConfig& cfg) {
    nlohmann::ordered_json j;
    j["experiment"] = cfg.experiment;
    j["seed"] = cfg.seed;
    nlohmann::ordered_json model;
    model["preset"] = cfg.model.preset;
    for (const auto& [k, v] : cfg.model.params) model[k] = v;
    if (cfg.model.preset == "gradient") model["potential"] = cfg.model.potential;
    j["model"] = model;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cfg.params) params[k] = v;
    j["params"] = params;
    return j.dump();
}

}  // namespace sdelab
