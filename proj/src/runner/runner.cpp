#include "sdelab/runner/runner.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

namespace sdelab {

const char* version() { return SDELAB_VERSION; }

std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg, const std::optional<std::string>& out_flag) {
    if (out_flag && !out_flag->empty()) return *out_flag;
    if (cfg.output && !cfg.output->empty()) return *cfg.output;
    if (const char* root = std::getenv(output_root_variable); root && *root)
        return std::filesystem::path(root) / cfg.experiment;
    return std::filesystem::path("runs") / cfg.experiment;
}

RunOutcome run_and_write(const ExperimentConfig& cfg, const std::optional<std::string>& out_flag, Execution exec) {
    RunOutcome out;
    out.manifest.experiment = cfg.experiment;
    out.manifest.version = version();
    out.manifest.seed = cfg.seed;
    out.manifest.config_hash = hex64(fnv1a64(canonical_text(cfg)));
    out.manifest.started_utc = utc_timestamp();
    try {
        out.result = run_experiment(cfg, exec);
    } catch (const std::exception& e) {
        throw std::runtime_error("experiment " + cfg.experiment + ": " + e.what());
    }
    out.manifest.finished_utc = utc_timestamp();
    out.status = out.result.flagged ? 2 : 0;
    out.manifest.status = out.status;

    out.directory = resolve_output_dir(cfg, out_flag);
    std::filesystem::create_directories(out.directory);
    nlohmann::ordered_json summary;
    summary["experiment"] = cfg.experiment;
    summary["seed"] = cfg.seed;
    summary["config"] = nlohmann::ordered_json::parse(canonical_text(cfg));
    summary["flagged"] = out.result.flagged;
    if (out.result.flagged) summary["flag_reason"] = out.result.flag_reason;
    summary["result"] = out.result.summary;
    out.manifest.outputs.push_back(write_output(out.directory, "summary.json", summary.dump(2) + "\n"));
    for (const auto& f : out.result.files) out.manifest.outputs.push_back(write_output(out.directory, f.name, f.content));
    write_output(out.directory, "manifest.json", out.manifest.to_json());
    return out;
}

std::string list_experiments_text() {
    std::ostringstream os;
    for (const auto& e : experiment_registry()) {
        os << e.name;
        if (e.criterion) os << " [criterion " << e.criterion << "]";
        os << "  " << e.description;
        if (!e.presets.empty()) {
            os << " (models:";
            for (const auto& p : e.presets) os << ' ' << p;
            os << ')';
        }
        os << '\n';
    }
    return os.str();
}

namespace {

bool is_error_column(const std::string& name) {
    return name == "stderr" || (name.size() > 7 && name.compare(name.size() - 7, 7, "_stderr") == 0);
}

std::string error_target(const std::vector<std::string>& header, std::size_t col) {
    const auto& name = header[col];
    if (name != "stderr") return name.substr(0, name.size() - 7);
    return col > 0 ? header[col - 1] : std::string();
}

}  // namespace

std::vector<std::filesystem::path> emit_plot_data(const std::filesystem::path& run_dir) {
    if (!std::filesystem::is_directory(run_dir)) throw std::runtime_error("run directory not found: " + run_dir.string());
    std::vector<std::filesystem::path> inputs;
    for (const auto& entry : std::filesystem::directory_iterator(run_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv") inputs.push_back(entry.path());
    if (inputs.empty()) throw std::runtime_error("no data files in " + run_dir.string());
    std::sort(inputs.begin(), inputs.end());
    const auto plot_dir = run_dir / "plot";
    std::filesystem::create_directories(plot_dir);

    std::vector<std::filesystem::path> written;
    for (const auto& path : inputs) {
        const auto data = read_csv(path);
        const auto& h = data.header;
        std::map<std::string, std::size_t> errors;
        for (std::size_t c = 1; c < h.size(); ++c)
            if (is_error_column(h[c])) errors[error_target(h, c)] = c;
        std::string text = "file,x_name,x,series,y,y_lo,y_hi\n";
        for (const auto& row : data.rows) {
            for (std::size_t c = 1; c < h.size(); ++c) {
                if (is_error_column(h[c])) continue;
                const double y = std::stod(row[c]);
                double lo = y, hi = y;
                if (const auto it = errors.find(h[c]); it != errors.end()) {
                    const double se = std::stod(row[it->second]);
                    lo = y - 1.96 * se;
                    hi = y + 1.96 * se;
                }
                text += path.filename().string() + "," + h[0] + "," + row[0] + "," + h[c] + "," + format_number(y) +
                        "," + format_number(lo) + "," + format_number(hi) + "\n";
            }
        }
        const auto name = "long_" + path.filename().string();
        write_output(plot_dir, name, text);
        written.push_back(plot_dir / name);
    }
    return written;
}

}  // namespace sdelab
