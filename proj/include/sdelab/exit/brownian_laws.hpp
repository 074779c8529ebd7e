#pragma once

#include <vector>

#include "sdelab/core/brownian.hpp"
#include "sdelab/core/parallel.hpp"
#include "sdelab/core/random.hpp"

namespace sdelab {

/// F(u) = (2/pi) arcsin(sqrt(u)) on [0, 1].
double arcsine_cdf(double u);

struct OccupationSample {
    /// (1/T) * integral of 1{W_s > 0} ds per path, trapezoid rule on the grid.
    std::vector<double> fractions;
    double ks_statistic = 0.0;
};

OccupationSample arcsine_occupation(std::size_t n_paths, const TimeGrid& grid, const GaussianStream& stream,
                                    Execution exec = Execution::openmp);

/// P(tau <= t) = 2 (1 - Phi(1 / sqrt(t))) for planar BM from the origin and
/// the line x = 1.
double line_hitting_cdf(double t);
/// Median of tau, 1 / z^2 with z the standard normal 0.75 quantile.
double line_hitting_median();
double cauchy_cdf(double x);

struct LineHitting {
    std::vector<double> tau;
    /// Second coordinate at the hitting time, same order as tau.
    std::vector<double> w2;
    std::size_t n_paths = 0;
    double fraction_censored = 0.0;
};

struct LineHittingOptions {
    double t_max = 1e6;
    /// Largest step of the distance-scaled walk.
    double h_max = 1e4;
    double distance_scale = 5.0;
    Execution exec = Execution::openmp;
};

/// Uncensored samples of (tau, W2_tau) for planar BM started at the origin.
LineHitting line_hitting_2d(std::size_t n_paths, double h, const GaussianStream& stream,
                            const LineHittingOptions& opts = {});

}  // namespace sdelab
