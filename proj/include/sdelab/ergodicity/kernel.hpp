#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sdelab/core/parallel.hpp"
#include "sdelab/core/sde_model.hpp"
#include "sdelab/pde/grid.hpp"

namespace sdelab {

/// Finite Markov kernel p(x, y): row x holds the probability of moving from
/// state x to state y in one step. Entries are nonnegative and row sums are at
/// most 1; rows with mass below 1 leak (killing or domain truncation).
/// Immutable after construction.
class DiscreteKernel {
public:
    /// Validates the matrix; tiny negative rounding (> -1e-13) is clamped to 0.
    explicit DiscreteKernel(Eigen::MatrixXd p, std::vector<double> states = {}, double t_step = 0.0);
    /// Divides every row by its sum.
    static DiscreteKernel row_normalized(const Eigen::MatrixXd& weights);

    std::size_t size() const { return static_cast<std::size_t>(p_.rows()); }
    const Eigen::MatrixXd& matrix() const { return p_; }
    double operator()(std::size_t x, std::size_t y) const { return p_(x, y); }
    /// State positions (node coordinates, or 0..n-1 for abstract kernels).
    const std::vector<double>& states() const { return states_; }
    double t_step() const { return t_step_; }
    bool substochastic() const { return substochastic_; }
    /// 1 - row sum for every row.
    std::vector<double> leaked() const;

    /// (P f)(x) = sum_y p(x, y) f(y).
    Eigen::VectorXd apply(const Eigen::VectorXd& f) const { return p_ * f; }
    /// (mu P)(y) = sum_x mu(x) p(x, y).
    Eigen::VectorXd push(const Eigen::VectorXd& mu) const { return p_.transpose() * mu; }

    /// Grid-function evaluation of V on the states.
    Eigen::VectorXd sample(const std::function<double(double)>& v) const;

private:
    Eigen::MatrixXd p_;
    std::vector<double> states_;
    double t_step_ = 0.0;
    bool substochastic_ = false;
};

enum class KernelMethod { pde, mc };

struct KernelOptions {
    KernelMethod method = KernelMethod::pde;
    BoundaryCondition bc = BoundaryCondition::neumann_zero;
    /// Implicit Euler steps per t_step (pde).
    std::size_t pde_steps = 200;
    /// Paths per row and Euler steps per t_step (mc).
    std::size_t mc_paths = 10000;
    std::size_t mc_steps = 100;
    std::uint64_t seed = 0;
    Execution exec = Execution::openmp;
};

/// One-step kernel of a scalar diffusion observed at times t_step on a grid.
/// pde: p(., y) = exp(t_step A) e_y for the discrete backward generator A,
/// computed column by column with implicit Euler; dirichlet_zero keeps only
/// the interior nodes and gives a substochastic kernel. mc: Euler paths from
/// each node binned to the nearest node, mass leaving the grid is dropped.
/// Throws if a row ends up with zero mass.
DiscreteKernel discretize_kernel(const SdeModel& model, const Grid1D& grid, double t_step,
                                 const KernelOptions& opts = {});

/// Matrix as CSV without header, one row per line.
void write_kernel_csv(std::ostream& os, const DiscreteKernel& kernel);
/// JSON sidecar with states, t_step and the substochastic flag.
void write_kernel_sidecar(std::ostream& os, const DiscreteKernel& kernel);
DiscreteKernel read_kernel(std::istream& csv, std::istream& sidecar);

}  // namespace sdelab
