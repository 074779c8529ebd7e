#pragma once

#include <functional>
#include <span>

#include "sdelab/core/sde_model.hpp"
#include "sdelab/pde/grid.hpp"

namespace sdelab {

/// (L phi)(x_i) = f phi' + (1/2) g^2 phi'' by central differences at an
/// interior node of a scalar model. Throws std::out_of_range at the ends.
double apply_generator(const SdeModel& model, std::span<const double> phi, const Grid1D& grid, std::size_t i);

/// (L phi)(x) = sum_i f_i d_i phi + (1/2) sum_ij D_ij d_i d_j phi for a model
/// in R^n, with phi given as a function and central differences of step h.
double apply_generator(const SdeModel& model, const std::function<double(std::span<const double>)>& phi,
                       std::span<const double> x, double h = 1e-3);

/// (L^dagger rho)(x_i) = (1/2) (D rho)'' - (f rho)' by central differences.
double apply_adjoint_generator(const SdeModel& model, const DensityField& rho, std::size_t i);

}  // namespace sdelab
