#include "sdelab/exit/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace sdelab {

double ball_exit_expectation(double R, double norm_x, int n) {
    if (!(R > 0.0) || n < 1) throw std::invalid_argument("ball_exit_expectation: need R > 0, n >= 1");
    if (!(norm_x >= 0.0 && norm_x < R)) throw std::invalid_argument("ball_exit_expectation: need |x| < R");
    return (R * R - norm_x * norm_x) / n;
}

double ball_exit_expectation(double R, std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return ball_exit_expectation(R, std::sqrt(r2), static_cast<int>(x.size()));
}

double ball_hitting_probability(double R, double norm_x, int n) {
    if (!(R > 0.0) || n < 1) throw std::invalid_argument("ball_hitting_probability: need R > 0, n >= 1");
    if (!(norm_x > R)) throw std::invalid_argument("ball_hitting_probability: need |x| > R");
    if (n <= 2) return 1.0;
    return std::pow(R / norm_x, n - 2);
}

double shell_hitting_probability(double R, double N, double norm_x, int n) {
    if (!(0.0 < R && R < N) || n < 1) throw std::invalid_argument("shell_hitting_probability: need 0 < R < N");
    if (!(R <= norm_x && norm_x <= N)) throw std::invalid_argument("shell_hitting_probability: need R <= |x| <= N");
    if (n == 1) return (N - norm_x) / (N - R);
    if (n == 2) return (std::log(N) - std::log(norm_x)) / (std::log(N) - std::log(R));
    const double e = 2.0 - n;
    return (std::pow(norm_x, e) - std::pow(N, e)) / (std::pow(R, e) - std::pow(N, e));
}

GbmExit gbm_exit(double r, double a, double b, double x) {
    if (r == 0.5) throw std::invalid_argument("gbm_exit: r = 1/2 (logarithmic case) is not implemented");
    if (!(0.0 <= a && a < x && x < b)) throw std::invalid_argument("gbm_exit: need 0 <= a < x < b");
    const double g = 1.0 - 2.0 * r;
    GbmExit out;
    if (a == 0.0) {
        out.p_hit_b_first = g > 0.0 ? std::pow(x / b, g) : 1.0;
        if (r > 0.5) out.mean_time_to_b = std::log(b / x) / (r - 0.5);
    } else {
        out.p_hit_b_first = (std::pow(x, g) - std::pow(a, g)) / (std::pow(b, g) - std::pow(a, g));
    }
    out.p_hit_a_first = 1.0 - out.p_hit_b_first;
    return out;
}

namespace {

void check_interval(double a, double x, double lambda) {
    if (!(a > 0.0)) throw std::invalid_argument("Feynman-Kac oracle: need a > 0");
    if (std::abs(x) > a) throw std::invalid_argument("Feynman-Kac oracle: need |x| <= a");
    if (!(lambda >= 0.0)) throw std::invalid_argument("Feynman-Kac oracle: need lambda >= 0");
}

}  // namespace

double fk_laplace_interval(double lambda, double a, double x) {
    check_interval(a, x, lambda);
    const double s = std::sqrt(2.0 * lambda);
    return std::cosh(s * x) / std::cosh(s * a);
}

double fk_laplace_one_sided(double lambda, double a, double x) {
    check_interval(a, x, lambda);
    if (lambda == 0.0) return (x + a) / (2.0 * a);
    const double s = std::sqrt(2.0 * lambda);
    return std::sinh(s * (x + a)) / std::sinh(2.0 * s * a);
}

double fk_conditional_mean(double a, double x) {
    check_interval(a, x, 0.0);
    return (a - x) * (3.0 * a + x) / 3.0;
}

double fk_one_sided_time(double a, double x) {
    check_interval(a, x, 0.0);
    return (a * a - x * x) * (3.0 * a + x) / (6.0 * a);
}

double three_set_bound(double e_A_BuC, double p, double e_dC_AuB) {
    if (!(e_A_BuC >= 0.0 && p >= 0.0 && e_dC_AuB >= 0.0))
        throw std::invalid_argument("three_set_bound: inputs must be non-negative");
    if (!(p < 1.0)) throw std::invalid_argument("three_set_bound: need p < 1");
    return (e_A_BuC + p * e_dC_AuB) / (1.0 - p);
}

}  // namespace sdelab
