#include "sdelab/pde/generator.hpp"

#include <stdexcept>
#include <vector>

namespace sdelab {

namespace {

void require_interior(std::size_t i, std::size_t size) {
    if (i == 0 || i + 1 >= size) throw std::out_of_range("generator stencil needs an interior node");
}

void require_scalar(const SdeModel& model) {
    if (model.n != 1 || model.k != 1) throw std::invalid_argument("grid generator needs a scalar model");
}

}  // namespace

double apply_generator(const SdeModel& model, std::span<const double> phi, const Grid1D& grid, std::size_t i) {
    require_scalar(model);
    require_interior(i, grid.size());
    if (phi.size() != grid.size()) throw std::invalid_argument("apply_generator: phi size != grid size");
    const double x = grid.node(i), dx = grid.dx();
    const double first = (phi[i + 1] - phi[i - 1]) / (2.0 * dx);
    const double second = (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (dx * dx);
    return model.drift_at(x) * first + 0.5 * model.diffusion_coefficient(x) * second;
}

double apply_generator(const SdeModel& model, const std::function<double(std::span<const double>)>& phi,
                       std::span<const double> x, double h) {
    const std::size_t n = model.n;
    if (x.size() != n) throw std::invalid_argument("apply_generator: state dimension mismatch");
    std::vector<double> f(n), d(n * n), y(x.begin(), x.end());
    model.drift(x, f);
    model.diffusion_matrix(x, d);
    const double phi0 = phi(x);
    double result = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = x[i] + h;
        const double pp = phi(y);
        y[i] = x[i] - h;
        const double pm = phi(y);
        y[i] = x[i];
        result += f[i] * (pp - pm) / (2.0 * h);
        result += 0.5 * d[i * n + i] * (pp - 2.0 * phi0 + pm) / (h * h);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (d[i * n + j] == 0.0) continue;
            double corners[4];
            int c = 0;
            for (double si : {1.0, -1.0})
                for (double sj : {1.0, -1.0}) {
                    y[i] = x[i] + si * h;
                    y[j] = x[j] + sj * h;
                    corners[c++] = phi(y);
                }
            y[i] = x[i];
            y[j] = x[j];
            const double mixed = (corners[0] - corners[1] - corners[2] + corners[3]) / (4.0 * h * h);
            result += d[i * n + j] * mixed;  // D symmetric: two off-diagonal terms times 1/2
        }
    }
    return result;
}

double apply_adjoint_generator(const SdeModel& model, const DensityField& rho, std::size_t i) {
    require_scalar(model);
    const Grid1D& grid = rho.grid;
    require_interior(i, grid.size());
    const double dx = grid.dx();
    auto drho = [&](std::size_t j) { return model.diffusion_coefficient(grid.node(j)) * rho.values[j]; };
    auto frho = [&](std::size_t j) { return model.drift_at(grid.node(j)) * rho.values[j]; };
    return 0.5 * (drho(i + 1) - 2.0 * drho(i) + drho(i - 1)) / (dx * dx) - (frho(i + 1) - frho(i - 1)) / (2.0 * dx);
}

}  // namespace sdelab
