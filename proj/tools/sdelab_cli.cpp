#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sdelab/runner/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Stochastic differential equation experiments"};
    app.set_version_flag("--version", std::string(sdelab::version()));
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "OpenMP threads (0 keeps the default)")->check(CLI::NonNegativeNumber);

    auto* run = app.add_subcommand("run", "Run an experiment from a configuration file");
    std::string config_path, experiment, out;
    std::optional<std::uint64_t> seed;
    bool serial = false;
    auto* config_opt = run->add_option("--config,-c", config_path, "INI or JSON configuration");
    run->add_option("--experiment,-e", experiment, "Run a registered experiment with its defaults")
        ->excludes(config_opt);
    run->add_option("--seed", seed, "Override the configured seed");
    run->add_option("--out,-o", out, "Output directory");
    run->add_option("--threads", threads, "OpenMP threads (0 keeps the default)")->check(CLI::NonNegativeNumber);
    run->add_flag("--serial", serial, "Use the serial reference kernels");

    auto* list = app.add_subcommand("list", "List registered experiments");

    auto* plot = app.add_subcommand("plot-data", "Write long-format plotting CSVs for a run directory");
    std::string run_dir;
    plot->add_option("run_dir", run_dir, "Directory written by 'run'")->required();

    CLI11_PARSE(app, argc, argv);
    sdelab::set_threads(threads);

    try {
        if (*list) {
            std::cout << sdelab::list_experiments_text();
            return 0;
        }
        if (*plot) {
            for (const auto& p : sdelab::emit_plot_data(run_dir)) std::cout << p.string() << '\n';
            return 0;
        }
        if (config_path.empty() && experiment.empty()) {
            std::cerr << "run: one of --config or --experiment is required\n";
            return 1;
        }
        sdelab::ExperimentConfig cfg = config_path.empty()
                                           ? sdelab::default_config(experiment)
                                           : sdelab::to_experiment_config(sdelab::load_config(config_path));
        if (seed) cfg.seed = *seed;
        const auto outcome = sdelab::run_and_write(cfg, out.empty() ? std::nullopt : std::optional(out),
                                                   serial ? sdelab::Execution::serial : sdelab::Execution::openmp);
        std::cout << outcome.result.summary.dump(2) << '\n';
        std::cout << "wrote " << outcome.directory.string() << '\n';
        if (outcome.status != 0) std::cerr << "flagged: " << outcome.result.flag_reason << '\n';
        return outcome.status;
    } catch (const sdelab::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
