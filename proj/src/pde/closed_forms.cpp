#include "sdelab/pde/closed_forms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sdelab {

namespace {

void check_args(double t, double x, double H) {
    if (!(t > 0.0)) throw std::invalid_argument("density: t must be positive");
    if (!(H > 0.0)) throw std::invalid_argument("density: H must be positive");
    if (x > H) throw std::invalid_argument("density: x must not exceed the barrier H");
}

}  // namespace

double heat_kernel(double t, double x) {
    if (!(t > 0.0)) throw std::invalid_argument("heat_kernel: t must be positive");
    return std::exp(-x * x / (2.0 * t)) / std::sqrt(2.0 * std::numbers::pi * t);
}

double reflected_bm_density(double t, double x, double H) {
    check_args(t, x, H);
    const double image = 2.0 * H - x;
    return heat_kernel(t, x) + heat_kernel(t, image);
}

double killed_bm_density(double t, double x, double H) {
    check_args(t, x, H);
    if (x == H) return 0.0;
    const double image = 2.0 * H - x;
    return heat_kernel(t, x) - heat_kernel(t, image);
}

double ou_variance(double t) { return 0.5 * (1.0 - std::exp(-2.0 * t)); }

}  // namespace sdelab
