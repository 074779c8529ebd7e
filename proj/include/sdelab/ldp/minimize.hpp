#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sdelab/core/parallel.hpp"
#include "sdelab/core/sde_model.hpp"
#include "sdelab/ldp/action.hpp"

namespace sdelab {

enum class PathInit { line, ode };

struct MinimizeOptions {
    /// Stop once sup |grad S| / h (the discrete Euler-Lagrange residual) < tol.
    double tol = 1e-6;
    std::size_t max_iter = 2000;
    PathInit init = PathInit::line;
};

struct ActionMinimum {
    ActionPath path;
    bool converged = false;
    std::size_t iterations = 0;
    double residual = 0.0;
    /// Action after every accepted step, starting with the initial path.
    std::vector<double> history;
};

/// Minimises fw_rate over the interior nodes with endpoints x0 and y fixed.
/// Search directions come from the Gauss-Newton matrix of the discrete action
/// (block tridiagonal), steps from Armijo backtracking, so the action never
/// increases. Without convergence in max_iter the best iterate is returned
/// with converged = false. `warm_start` (any grid) replaces the initial path.
ActionMinimum minimize_action(const SdeModel& model, std::span<const double> x0, std::span<const double> y, double T,
                              std::size_t n_steps, const MinimizeOptions& opts = {},
                              const ActionPath* warm_start = nullptr);

struct QuasipotentialOptions {
    MinimizeOptions minimize;
    /// Time step of the path grids; n_steps = ceil(T / dt).
    double dt = 5e-3;
};

struct QuasipotentialResult {
    double value = 0.0;
    double minimizing_T = 0.0;
    ActionPath path;
    bool converged = true;
    std::vector<double> T_values;
    std::vector<double> actions;
    /// Running minimum of actions over increasing T.
    std::vector<double> envelope;
};

/// inf over T in T_list of the minimal action from x_star to y, T_list is
/// processed in increasing order with each minimiser warm-started from the
/// previous one. Throws if x_star is not an equilibrium (|f| >= 1e-6).
QuasipotentialResult quasipotential(const SdeModel& model, std::span<const double> x_star,
                                    std::span<const double> y, std::vector<double> T_list,
                                    const QuasipotentialOptions& opts = {});

struct BoundaryQuasipotential {
    double value = 0.0;
    double parameter = 0.0;
    std::vector<double> point;
    QuasipotentialResult best;
};

/// inf of the quasipotential over a boundary parametrised by s in [0, 1):
/// n_samples points evaluated in parallel, then Brent refinement around the
/// best sample.
BoundaryQuasipotential boundary_quasipotential(const SdeModel& model, std::span<const double> x_star,
                                               const std::function<std::vector<double>(double)>& boundary,
                                               const std::vector<double>& T_list,
                                               const QuasipotentialOptions& opts = {}, std::size_t n_samples = 64,
                                               Execution exec = Execution::openmp);

}  // namespace sdelab
