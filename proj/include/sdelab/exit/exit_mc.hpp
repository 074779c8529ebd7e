#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "sdelab/core/parallel.hpp"
#include "sdelab/core/random.hpp"
#include "sdelab/core/sde_model.hpp"
#include "sdelab/core/stats.hpp"
#include "sdelab/exit/domain.hpp"

namespace sdelab {

struct ExitOptions {
    double h = 1e-3;
    std::size_t n_paths = 10000;
    double t_max = 50.0;
    std::vector<double> lambdas;
    /// When h_max > h and the domain has a distance bound, the step is
    /// (d / (distance_scale * |g(x)|_F))^2 clamped to [h, h_max], so a single
    /// step reaches the boundary with probability of order
    /// P(|N(0,1)| > distance_scale). h_max = 0 keeps fixed steps.
    double h_max = 0.0;
    double distance_scale = 5.0;
    bool keep_samples = false;
    Execution exec = Execution::openmp;
};

struct ExitSample {
    std::size_t path_id = 0;
    double time = 0.0;
    std::vector<double> location;
    bool censored = false;
};

struct LaplaceEstimate {
    double lambda = 0.0;
    Estimate estimate;
};

struct ExitStatistics {
    std::size_t n_paths = 0;
    std::size_t n_exited = 0;
    /// Mean over uncensored paths.
    double mean_time = 0.0;
    double time_std_error = 0.0;
    /// E[exp(-lambda tau)], censored paths contribute 0.
    std::vector<LaplaceEstimate> laplace;
    std::vector<std::size_t> exit_location_histogram;
    double fraction_censored = 0.0;
    bool valid = false;
    std::vector<ExitSample> samples;

    /// Estimate of E[fn(sample)] over all paths (censored included).
    Estimate functional(const std::function<double(const ExitSample&)>& fn) const;
};

/// First exit of dX = f dt + g dW from `domain` started at x0. Each path uses
/// stream.substream(path_id). The first step whose end state lies outside is
/// located; tau and the exit point are linearly interpolated on the level
/// function between the straddling nodes. Paths alive at t_max are censored.
ExitStatistics mc_exit(const SdeModel& model, std::span<const double> x0, const Domain& domain,
                       const ExitOptions& opts, const GaussianStream& stream);

/// JSON object (stable key order) without raw samples.
void write_json(std::ostream& os, const ExitStatistics& stats);
/// CSV "path_id,exit_time,censored,x0,x1,..." of the raw samples.
void write_samples_csv(std::ostream& os, const ExitStatistics& stats);

}  // namespace sdelab
