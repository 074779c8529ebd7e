#pragma once

#include <optional>
#include <span>

namespace sdelab {

/// E^x[tau] for n-dimensional Brownian motion leaving the ball of radius R:
/// (R^2 - |x|^2) / n.
double ball_exit_expectation(double R, std::span<const double> x);
double ball_exit_expectation(double R, double norm_x, int n);

/// P^x[Brownian motion ever hits the ball of radius R], |x| > R:
/// 1 for n <= 2, (R/|x|)^(n-2) otherwise.
double ball_hitting_probability(double R, double norm_x, int n);

/// Probability of reaching radius R before radius N from R < |x| < N.
double shell_hitting_probability(double R, double N, double norm_x, int n);

struct GbmExit {
    double p_hit_a_first = 0.0;
    double p_hit_b_first = 0.0;
    /// E^x[tau_b] when it is finite (r > 1/2, a = 0).
    std::optional<double> mean_time_to_b;
};

/// Exit of dX = r X dt + X dW from (a, b), 0 <= a < x < b, via the harmonic
/// function x^(1-2r). a = 0 is the limit a -> 0: for r < 1/2 the path drifts
/// to 0 with probability 1 - (x/b)^(1-2r); for r > 1/2 it reaches b surely and
/// E^x[tau_b] = log(b/x) / (r - 1/2). Throws for r = 1/2.
GbmExit gbm_exit(double r, double a, double b, double x);

/// E^x[exp(-lambda tau)] for BM leaving (-a, a).
double fk_laplace_interval(double lambda, double a, double x);
/// E^x[exp(-lambda tau) 1{tau_a < tau_-a}].
double fk_laplace_one_sided(double lambda, double a, double x);
/// E^x[tau | tau_a < tau_-a] = (a - x)(3a + x) / 3.
double fk_conditional_mean(double a, double x);
/// E^x[tau 1{tau_a < tau_-a}] = (a^2 - x^2)(3a + x) / (6a).
double fk_one_sided_time(double a, double x);

/// Upper bound on E_A[tau_B] from E_A[tau_{B u C}], P_A[tau_C < tau_B] and
/// sup over dC of E[tau_{A u B}].
double three_set_bound(double e_A_BuC, double p_A_C_before_B, double e_dC_AuB);

}  // namespace sdelab
