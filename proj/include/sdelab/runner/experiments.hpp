#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdelab/core/parallel.hpp"
#include "sdelab/core/random.hpp"
#include "sdelab/core/sde_model.hpp"
#include "sdelab/runner/config.hpp"

namespace sdelab {

struct ParamSpec {
    std::string name;
    double default_value = 0.0;
    double min = 0.0;
    double max = 0.0;
    bool integer = false;
};

struct OutputFile {
    std::string name;
    std::string content;
};

struct ExperimentResult {
    nlohmann::ordered_json summary;
    std::vector<OutputFile> files;
    /// Non-convergence or an invalid estimate; the run exits nonzero.
    bool flagged = false;
    std::string flag_reason;
};

class ExperimentContext {
public:
    ExperimentContext(const ExperimentConfig& config, Execution exec) : config_(config), exec_(exec) {}

    const ExperimentConfig& config() const { return config_; }
    Execution exec() const { return exec_; }
    double param(const std::string& name) const;
    std::size_t count(const std::string& name) const;
    /// Independent stream per purpose, derived from the configured seed.
    GaussianStream stream(std::uint64_t purpose = 0) const { return GaussianStream(config_.seed, purpose); }
    /// Model from the [model] section (preset defaults applied).
    SdeModel model() const;
    /// U of the gradient preset.
    Potential potential() const;

private:
    const ExperimentConfig& config_;
    Execution exec_;
};

struct Experiment {
    std::string name;
    std::string description;
    /// Acceptance criterion reproduced by the default configuration, 0 if none.
    int criterion = 0;
    /// Allowed model presets, first is the default; empty when the model is fixed.
    std::vector<std::string> presets;
    std::map<std::string, double> model_defaults;
    std::string default_potential;
    std::vector<ParamSpec> params;
    std::function<ExperimentResult(const ExperimentContext&)> run;
};

const std::vector<Experiment>& experiment_registry();
/// Throws std::out_of_range for unknown names.
const Experiment& find_experiment(const std::string& name);

/// Allowed keys of a model preset with their defaults.
const std::map<std::string, double>& preset_parameters(const std::string& preset);

/// Configuration with every default filled in.
ExperimentConfig default_config(const std::string& experiment, std::uint64_t seed = 1);

/// Runs an experiment in memory; no files are written.
ExperimentResult run_experiment(const ExperimentConfig& config, Execution exec = Execution::openmp);

}  // namespace sdelab
