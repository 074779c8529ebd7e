#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "sdelab/core/random.hpp"
#include "sdelab/ergodicity/kernel.hpp"

namespace sdelab {

struct HmConstants {
    double beta = 0.0;
    double alpha_bar = 0.0;
};

/// beta = alpha0 / d and alpha_bar = max(1 - (alpha - alpha0),
/// (2 + R beta gamma0) / (2 + R beta)). Requires d > 0, alpha0 in (0, alpha)
/// and gamma0 in (gamma + 2d/R, 1); throws when that interval is empty.
HmConstants hm_constants(double gamma, double d, double alpha, double R, double alpha0, double gamma0);

/// sum_x (1 + beta V(x)) |mu(x) - nu(x)|.
double rho_beta_distance(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu, const Eigen::VectorXd& V,
                         double beta);

struct HmContractionReport {
    std::size_t n_pairs = 0;
    double max_ratio = 0.0;
    /// Pairs with ratio above alpha_bar + slack.
    std::size_t violations = 0;
    double slack = 1e-9;
};

/// rho_beta(mu P, nu P) / rho_beta(mu, nu) over random probability pairs:
/// log-uniform dense vectors, point masses and mixtures of both. Pairs with
/// mu = nu count as ratio 0.
HmContractionReport verify_hm_contraction(const DiscreteKernel& kernel, const Eigen::VectorXd& V, double beta,
                                          double alpha_bar, std::size_t n_pairs, const GaussianStream& stream,
                                          double slack = 1e-9);

/// rho_beta(delta_x P^n, pi) for n = 0..n_steps.
std::vector<double> rho_beta_decay(const DiscreteKernel& kernel, const Eigen::VectorXd& V, double beta,
                                   std::size_t x, const Eigen::VectorXd& pi, std::size_t n_steps);

}  // namespace sdelab
