#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sdelab/core/sde_model.hpp"
#include "sdelab/pde/grid.hpp"

namespace sdelab {

/// Tridiagonal matrix; lower[0] and upper[n-1] are unused.
struct Tridiagonal {
    std::vector<double> lower, diag, upper;

    std::size_t size() const { return diag.size(); }
    void multiply(std::span<const double> x, std::span<double> y) const;
    Tridiagonal transposed() const;
};

/// Thomas-algorithm factorization; solve() is const and allocation free.
class TridiagonalSolver {
public:
    explicit TridiagonalSolver(const Tridiagonal& m);
    void solve(std::span<double> rhs) const;

private:
    std::vector<double> lower_, upper_scaled_, inv_pivot_;
};

/// Explicit step violates h <= 1 / max|A_ii| (= dx^2 / max D without upwinding).
class CflError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Stepper { implicit_euler, explicit_euler };

/// Discrete backward generator A on a 1D grid: du/dt = A u approximates the
/// backward Kolmogorov equation. Central differences; nodes with cell Péclet
/// number |f| dx / D > 1 switch the drift term to upwinding so that A keeps
/// nonnegative off-diagonals. Rows sum to zero except killed boundary rows,
/// which are zero. The Fokker-Planck operator is the transpose acting on
/// nodal masses. Immutable after construction.
class KolmogorovOperator {
public:
    KolmogorovOperator(const SdeModel& model, const Grid1D& grid, BoundaryCondition bc);

    const Tridiagonal& matrix() const { return a_; }
    const Grid1D& grid() const { return grid_; }
    BoundaryCondition boundary() const { return bc_; }
    std::size_t upwinded_nodes() const { return upwinded_; }
    double max_explicit_step() const;

    /// Factorization of I - h A (adjoint: I - h A^T), killed ends pinned.
    TridiagonalSolver implicit_solver(double h, bool adjoint) const;
    /// v <- (I + h A) v (adjoint: I + h A^T). Throws CflError if h is too large.
    void explicit_step(std::span<double> v, double h, bool adjoint) const;
    /// Zeroes killed end nodes; returns the removed amount.
    double kill_boundary(std::span<double> v) const;

private:
    Grid1D grid_;
    BoundaryCondition bc_;
    Tridiagonal a_;
    std::size_t upwinded_ = 0;
};

struct SolverOptions {
    Stepper stepper = Stepper::implicit_euler;
    double dt = 1e-3;
    /// Keep every n-th step as a snapshot (the first and last are always kept).
    std::size_t snapshot_every = 0;
};

/// Snapshots of a time-dependent field; at(t) interpolates linearly between
/// the two bracketing snapshots.
struct FieldHistory {
    std::vector<DensityField> snapshots;
    bool positivity_preserved = true;
    bool boundary_warning = false;
    double absorbed_mass = 0.0;
    std::size_t upwinded_nodes = 0;

    const DensityField& final() const { return snapshots.back(); }
    DensityField at(double t) const;
};

/// du/dt = L u, u(0) = phi0, up to time T.
FieldHistory solve_backward_kolmogorov(const SdeModel& model, std::span<const double> phi0, double T,
                                       const Grid1D& grid, BoundaryCondition bc, const SolverOptions& opts = {});

/// d rho/dt = L^dagger rho, rho(0) = rho0, up to time T. With neumann or
/// natural ends the trapezoidal mass is conserved to rounding.
FieldHistory solve_fokker_planck(const SdeModel& model, const DensityField& rho0, double T, BoundaryCondition bc,
                                 const SolverOptions& opts = {});

/// e^{-U}/Z with Z by the trapezoidal rule. Throws if Z is not finite and
/// positive or if more than 1e-4 of the mass sits within 5 dx of an end.
DensityField stationary_density_gradient(const std::function<double(double)>& potential, const Grid1D& grid);
/// Z = int e^{-U} dx over the grid (trapezoidal).
double gradient_partition_function(const std::function<double(double)>& potential, const Grid1D& grid);

/// Normalized Gaussian of standard deviation 2 dx centred at x0; stands in
/// for a Dirac initial condition.
DensityField delta_density(const Grid1D& grid, double x0);

}  // namespace sdelab
