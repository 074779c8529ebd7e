#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sdelab {

/// Uniform 1D grid with n_cells + 1 nodes on [x_min, x_max].
class Grid1D {
public:
    Grid1D(double x_min, double x_max, std::size_t n_cells);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t n_cells() const { return n_cells_; }
    std::size_t size() const { return n_cells_ + 1; }
    double dx() const { return (x_max_ - x_min_) / static_cast<double>(n_cells_); }
    double node(std::size_t i) const;
    std::vector<double> nodes() const;
    /// Trapezoidal quadrature weights.
    std::vector<double> weights() const;
    /// Index of the node closest to x (clamped to the grid).
    std::size_t nearest(double x) const;

    std::vector<double> sample(const std::function<double(double)>& f) const;

    bool operator==(const Grid1D&) const = default;

private:
    double x_min_;
    double x_max_;
    std::size_t n_cells_;
};

enum class BoundaryCondition {
    dirichlet_zero,  ///< killed at the ends
    neumann_zero,    ///< reflected at the ends
    natural,         ///< no diffusion across the end nodes; drift only if it points inward
};

BoundaryCondition parse_boundary_condition(const std::string& name);
std::string to_string(BoundaryCondition bc);

/// Nodal density (or, for backward solves, nodal function values) at a time.
struct DensityField {
    Grid1D grid;
    std::vector<double> values;
    double time = 0.0;

    /// Trapezoidal integral of the values.
    double mass() const;
    double mean() const;
    double variance() const;
    /// Mass carried by the n_nodes outermost nodes on either side.
    double boundary_mass(std::size_t n_nodes = 5) const;
};

double l1_distance(const DensityField& a, const DensityField& b);
double l1_distance(const DensityField& a, const std::function<double(double)>& f);

/// CSV with header "x,value".
void write_csv(std::ostream& os, const DensityField& field);
DensityField read_density_csv(std::istream& is);

}  // namespace sdelab
