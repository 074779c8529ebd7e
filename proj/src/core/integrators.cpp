#include "sdelab/core/integrators.hpp"

#include <cmath>

namespace sdelab {

BlowUpError::BlowUpError(std::size_t step, const std::string& context)
    : std::runtime_error("non-finite state at step " + std::to_string(step) +
                         (context.empty() ? "" : " (" + context + ")")),
      step_(step) {}

bool all_finite(std::span<const double> x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

EulerStepper::EulerStepper(const SdeModel& model)
    : model_(model), f_(model.n), g_(model.n * model.k), dw_(model.k) {}

void EulerStepper::step(std::span<double> x, double h, std::span<const double> dw) {
    const std::size_t n = model_.n, k = model_.k;
    model_.drift(x, f_);
    model_.diffusion(x, g_);
    for (std::size_t i = 0; i < n; ++i) {
        double noise = 0.0;
        for (std::size_t j = 0; j < k; ++j) noise += g_[i * k + j] * dw[j];
        f_[i] = x[i] + f_[i] * h + noise;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = f_[i];
}

namespace {

void check_x0(const SdeModel& model, std::span<const double> x0) {
    if (x0.size() != model.n) throw std::invalid_argument("initial state has wrong dimension");
}

}  // namespace

SamplePath euler_maruyama(const SdeModel& model, std::span<const double> x0, const WienerPath& wiener) {
    check_x0(model, x0);
    if (wiener.dim != model.k) throw std::invalid_argument("euler_maruyama: Wiener dimension != noise dimension");
    const TimeGrid& grid = wiener.grid;
    SamplePath path{grid, model.n, std::vector<double>(grid.size() * model.n), wiener};
    std::vector<double> x(x0.begin(), x0.end()), dw(model.k);
    std::copy(x.begin(), x.end(), path.values.begin());
    EulerStepper stepper(model);
    const double h = grid.step();
    for (std::size_t s = 0; s < grid.n_steps(); ++s) {
        for (std::size_t j = 0; j < model.k; ++j) dw[j] = wiener.increment(s, j);
        stepper.step(x, h, dw);
        if (!all_finite(x)) throw BlowUpError(s + 1, model.name);
        std::copy(x.begin(), x.end(), path.values.begin() + static_cast<long>((s + 1) * model.n));
    }
    return path;
}

SamplePath euler_maruyama(const SdeModel& model, std::span<const double> x0, const TimeGrid& grid,
                          GaussianStream& stream) {
    return euler_maruyama(model, x0, sample_wiener(grid, model.k, stream));
}

SamplePath explicit_euler(const SdeModel& model, std::span<const double> x0, const TimeGrid& grid) {
    check_x0(model, x0);
    SamplePath path{grid, model.n, std::vector<double>(grid.size() * model.n), std::nullopt};
    std::vector<double> x(x0.begin(), x0.end()), f(model.n);
    std::copy(x.begin(), x.end(), path.values.begin());
    const double h = grid.step();
    for (std::size_t s = 0; s < grid.n_steps(); ++s) {
        model.drift(x, f);
        for (std::size_t i = 0; i < model.n; ++i) x[i] += h * f[i];
        if (!all_finite(x)) throw BlowUpError(s + 1, model.name);
        std::copy(x.begin(), x.end(), path.values.begin() + static_cast<long>((s + 1) * model.n));
    }
    return path;
}

}  // namespace sdelab
