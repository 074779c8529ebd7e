#pragma once

#include <span>
#include <vector>

#include "sdelab/core/parallel.hpp"
#include "sdelab/core/random.hpp"
#include "sdelab/core/sde_model.hpp"
#include "sdelab/exit/domain.hpp"

namespace sdelab {

/// Minimal action for dX = -X dt + dW to go from x0 to h in time T:
/// (h e^{T/2} - x0 e^{-T/2})^2 / (2 sinh T).
double ou_exit_rate(double x0, double h, double T);
/// T -> infinity limit, h^2.
double ou_exit_rate_limit(double h);

struct ArrheniusOptions {
    double h = 1e-2;
    std::size_t n_paths = 1000;
    /// t_max = factor * max(1, exp(V_bar / eps)).
    double t_max_factor = 50.0;
    /// Runs with a larger censored fraction are rejected.
    double max_censored = 0.01;
    Execution exec = Execution::openmp;
};

struct ArrheniusReport {
    std::vector<double> eps;
    std::vector<double> mean_tau;
    std::vector<double> std_error;
    /// eps * log(mean tau) and its delta-method standard error.
    std::vector<double> eps_log_mean;
    std::vector<double> eps_log_stderr;
    std::vector<double> fraction_censored;
    /// Least-squares line eps log E[tau] = intercept + slope * eps.
    double intercept = 0.0;
    double slope = 0.0;
    double v_bar = 0.0;
    /// eps log E[tau] moves toward v_bar as eps decreases.
    bool monotone = false;
    /// |eps log E[tau] - v_bar| / v_bar at the smallest eps.
    double relative_error_smallest = 0.0;
};

/// Mean exit time of dX = -grad U dt + sqrt(eps) dW from `domain` for each
/// eps (same random stream for every eps). Needs at least 3 values of eps.
ArrheniusReport arrhenius_check(const Potential& U, std::vector<double> eps_list, const Domain& domain,
                                std::span<const double> x0, double v_bar, const ArrheniusOptions& opts,
                                const GaussianStream& stream);

/// (2 pi / |lambda_-(z)|) sqrt(|det Hess U(z)| / det Hess U(x)) exp(2 (U(z) - U(x)) / eps).
/// Throws unless Hess U(x) is positive definite and Hess U(z) has exactly one
/// negative eigenvalue.
double eyring_kramers_time(const Potential& U, std::span<const double> x_star, std::span<const double> z_star,
                           double eps);

}  // namespace sdelab
