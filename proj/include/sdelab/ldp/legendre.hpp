#pragma once

#include <functional>
#include <vector>

namespace sdelab {

/// Log-moment generating function and its numerical Legendre transform
/// Lambda*(x) = sup_t (t x - Lambda(t)) tabulated on x.
struct LegendrePair {
    std::function<double(double)> Lambda;
    std::vector<double> x;
    std::vector<double> Lambda_star;
    /// Maximising t for each x.
    std::vector<double> t_star;

    /// Linear interpolation on the tabulated grid.
    double operator()(double x) const;
    /// Discrete midpoint convexity on the tabulated values (up to tol).
    bool convex(double tol = 1e-9) const;
};

/// Grid maximisation over t_grid, then Brent refinement between the
/// neighbours of the best grid point.
LegendrePair legendre_transform(std::function<double(double)> Lambda, const std::vector<double>& x_grid,
                                const std::vector<double>& t_grid);

/// Cramer rate of a fair +-1/2 coin mean: (1/2 + d) log(1 + 2d) + (1/2 - d) log(1 - 2d).
double coin_rate(double delta);

}  // namespace sdelab
