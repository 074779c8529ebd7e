#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sdelab/core/brownian.hpp"
#include "sdelab/core/sde_model.hpp"

namespace sdelab {

/// Path phi on a uniform time grid, node-major values in R^dim.
struct ActionPath {
    TimeGrid grid{0.0, 1.0, 0};
    std::size_t dim = 1;
    std::vector<double> values;
    std::optional<double> action;

    std::span<const double> at(std::size_t k) const { return {values.data() + k * dim, dim}; }
    std::span<double> at(std::size_t k) { return {values.data() + k * dim, dim}; }
    /// Scalar paths only.
    double operator[](std::size_t k) const { return values[k * dim]; }

    /// Straight line from x0 to y.
    static ActionPath line(std::span<const double> x0, std::span<const double> y, const TimeGrid& grid);
    static ActionPath from_function(const std::function<double(double)>& phi, const TimeGrid& grid);
    /// Linear interpolation of this path in normalised time onto another grid.
    ActionPath resampled(const TimeGrid& grid) const;
    /// Nodes k0..k1 as a path on the matching sub-grid.
    ActionPath slice(std::size_t k0, std::size_t k1) const;
};

/// (1/2) sum |dphi / h|^2 h. Throws unless the path starts at 0.
double schilder_rate(const ActionPath& path);

/// (1/2) sum <r_k, D(phi_k)^{-1} r_k> h with r_k = (phi_{k+1} - phi_k)/h - f(phi_k).
/// Throws std::domain_error if D is singular somewhere along the path.
double fw_rate(const SdeModel& model, const ActionPath& path);

/// fw_rate and its gradient with respect to every node (endpoint entries
/// included; callers holding endpoints fixed ignore them). Derivatives of D
/// use central differences of step 1e-5.
double fw_rate_gradient(const SdeModel& model, const ActionPath& path, std::span<double> grad);

/// Forward Euler solution of phi' = f(phi) from x0 on the grid.
ActionPath ode_path(const SdeModel& model, std::span<const double> x0, const TimeGrid& grid);

/// CSV "t,x0,x1,...".
void write_csv(std::ostream& os, const ActionPath& path);

}  // namespace sdelab
