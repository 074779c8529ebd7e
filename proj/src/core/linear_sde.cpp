#include "sdelab/core/linear_sde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sdelab {

namespace {

void require_scalar(const WienerPath& w) {
    if (w.dim != 1) throw std::invalid_argument("linear SDE solutions need a scalar Wiener path");
}

}  // namespace

SamplePath exact_linear_additive(const TimeFunction& a, const TimeFunction& sigma, double x0,
                                 const WienerPath& wiener) {
    require_scalar(wiener);
    const TimeGrid& grid = wiener.grid;
    const double h = grid.step();
    SamplePath path{grid, 1, std::vector<double>(grid.size()), wiener};
    double alpha = 0.0;        // alpha(t_k)
    double convolution = 0.0;  // sum_{j<k} e^{-alpha_j} sigma_j dW_j
    path.values[0] = x0;
    for (std::size_t k = 0; k < grid.n_steps(); ++k) {
        const double t = grid.node(k);
        convolution += std::exp(-alpha) * sigma(t) * wiener.increment(k);
        alpha += a(t) * h;
        path.values[k + 1] = std::exp(alpha) * (x0 + convolution);
    }
    return path;
}

SamplePath exact_linear_multiplicative(const TimeFunction& a, const TimeFunction& sigma, double x0,
                                       const WienerPath& wiener) {
    require_scalar(wiener);
    if (!(x0 > 0.0)) throw std::invalid_argument("exact_linear_multiplicative: x0 must be positive");
    const TimeGrid& grid = wiener.grid;
    const double h = grid.step();
    SamplePath path{grid, 1, std::vector<double>(grid.size()), wiener};
    double exponent = 0.0;
    path.values[0] = x0;
    for (std::size_t k = 0; k < grid.n_steps(); ++k) {
        const double t = grid.node(k);
        const double s = sigma(t);
        exponent += (a(t) - 0.5 * s * s) * h + s * wiener.increment(k);
        path.values[k + 1] = x0 * std::exp(exponent);
    }
    return path;
}

SamplePath sine_fixture(const WienerPath& wiener) {
    require_scalar(wiener);
    SamplePath path{wiener.grid, 1, std::vector<double>(wiener.grid.size()), wiener};
    double frozen = 0.0;
    for (std::size_t k = 0; k < wiener.grid.size(); ++k) {
        const double w = wiener[k];
        if (frozen == 0.0 && std::abs(w) >= std::numbers::pi / 2) frozen = w > 0 ? 1.0 : -1.0;
        path.values[k] = frozen != 0.0 ? frozen : std::sin(w);
    }
    return path;
}

SdeModel sine_fixture_model() {
    return SdeModel::scalar([](double x) { return -0.5 * x; },
                            [](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); }, "sine");
}

}  // namespace sdelab
