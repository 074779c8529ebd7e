#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sdelab/core/parallel.hpp"
#include "sdelab/runner/config.hpp"
#include "sdelab/runner/experiments.hpp"
#include "sdelab/runner/io.hpp"

namespace sdelab {

const char* version();

/// Environment variable naming the default output root.
inline constexpr const char* output_root_variable = "SDELAB_OUT";

/// --out, then the configured output, then $SDELAB_OUT/<experiment>, then
/// runs/<experiment> under the working directory.
std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg, const std::optional<std::string>& out_flag);

struct RunOutcome {
    /// 0 on success, 2 when the experiment flagged a failure.
    int status = 0;
    std::filesystem::path directory;
    ExperimentResult result;
    RunManifest manifest;
};

/// Runs a validated configuration and writes summary.json, the experiment's
/// data files and manifest.json into the output directory.
RunOutcome run_and_write(const ExperimentConfig& cfg, const std::optional<std::string>& out_flag,
                         Execution exec = Execution::openmp);

/// One line per registered experiment.
std::string list_experiments_text();

/// Long-format CSVs (file, x_name, x, series, y, y_lo, y_hi) next to every
/// data CSV of a run, in <run_dir>/plot. Columns called "stderr" or ending in
/// "_stderr" become 95% error bars of the matching series. Returns the files
/// written; throws std::runtime_error for a missing run directory.
std::vector<std::filesystem::path> emit_plot_data(const std::filesystem::path& run_dir);

}  // namespace sdelab
