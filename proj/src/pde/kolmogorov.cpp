#include "sdelab/pde/kolmogorov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sdelab {

void Tridiagonal::multiply(std::span<const double> x, std::span<double> y) const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s += lower[i] * x[i - 1];
        if (i + 1 < n) s += upper[i] * x[i + 1];
        y[i] = s;
    }
}

Tridiagonal Tridiagonal::transposed() const {
    const std::size_t n = size();
    Tridiagonal t{std::vector<double>(n, 0.0), diag, std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i + 1 < n; ++i) {
        t.upper[i] = lower[i + 1];
        t.lower[i + 1] = upper[i];
    }
    return t;
}

TridiagonalSolver::TridiagonalSolver(const Tridiagonal& m)
    : lower_(m.lower), upper_scaled_(m.size(), 0.0), inv_pivot_(m.size(), 0.0) {
    const std::size_t n = m.size();
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pivot = m.diag[i] - (i > 0 ? m.lower[i] * prev : 0.0);
        if (pivot == 0.0) throw std::runtime_error("TridiagonalSolver: zero pivot");
        inv_pivot_[i] = 1.0 / pivot;
        prev = (i + 1 < n) ? m.upper[i] * inv_pivot_[i] : 0.0;
        upper_scaled_[i] = prev;
    }
}

void TridiagonalSolver::solve(std::span<double> d) const {
    const std::size_t n = inv_pivot_.size();
    for (std::size_t i = 0; i < n; ++i) d[i] = (d[i] - (i > 0 ? lower_[i] * d[i - 1] : 0.0)) * inv_pivot_[i];
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= upper_scaled_[i] * d[i + 1];
}

KolmogorovOperator::KolmogorovOperator(const SdeModel& model, const Grid1D& grid, BoundaryCondition bc)
    : grid_(grid), bc_(bc) {
    if (model.n != 1 || model.k != 1) throw std::invalid_argument("KolmogorovOperator: scalar model required");
    const std::size_t n = grid.size();
    const double dx = grid.dx();
    a_ = Tridiagonal{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double x = grid.node(i);
        const double f = model.drift_at(x);
        const double diff = 0.5 * model.diffusion_coefficient(x) / (dx * dx);
        double lo = diff - f / (2.0 * dx);
        double up = diff + f / (2.0 * dx);
        if (lo < 0.0 || up < 0.0) {
            lo = diff + std::max(-f, 0.0) / dx;
            up = diff + std::max(f, 0.0) / dx;
            ++upwinded_;
        }
        a_.lower[i] = lo;
        a_.upper[i] = up;
        a_.diag[i] = -(lo + up);
    }
    const double x0 = grid.x_min(), xn = grid.x_max();
    switch (bc) {
        case BoundaryCondition::dirichlet_zero:
            break;
        case BoundaryCondition::neumann_zero:
            a_.upper[0] = model.diffusion_coefficient(x0) / (dx * dx);
            a_.lower[n - 1] = model.diffusion_coefficient(xn) / (dx * dx);
            break;
        case BoundaryCondition::natural:
            a_.upper[0] = std::max(model.drift_at(x0), 0.0) / dx;
            a_.lower[n - 1] = std::max(-model.drift_at(xn), 0.0) / dx;
            break;
    }
    a_.diag[0] = -a_.upper[0];
    a_.diag[n - 1] = -a_.lower[n - 1];
}

double KolmogorovOperator::max_explicit_step() const {
    double m = 0.0;
    for (double d : a_.diag) m = std::max(m, std::abs(d));
    return m == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / m;
}

TridiagonalSolver KolmogorovOperator::implicit_solver(double h, bool adjoint) const {
    Tridiagonal m = adjoint ? a_.transposed() : a_;
    for (std::size_t i = 0; i < m.size(); ++i) {
        m.lower[i] *= -h;
        m.upper[i] *= -h;
        m.diag[i] = 1.0 - h * m.diag[i];
    }
    return TridiagonalSolver(m);
}

void KolmogorovOperator::explicit_step(std::span<double> v, double h, bool adjoint) const {
    if (h > max_explicit_step() * (1.0 + 1e-12))
        throw CflError("explicit step " + std::to_string(h) + " exceeds stability limit " +
                       std::to_string(max_explicit_step()));
    std::vector<double> av(v.size());
    if (adjoint)
        a_.transposed().multiply(v, av);
    else
        a_.multiply(v, av);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += h * av[i];
}

double KolmogorovOperator::kill_boundary(std::span<double> v) const {
    if (bc_ != BoundaryCondition::dirichlet_zero) return 0.0;
    const double removed = v.front() + v.back();
    v.front() = 0.0;
    v.back() = 0.0;
    return removed;
}

DensityField FieldHistory::at(double t) const {
    if (snapshots.empty()) throw std::logic_error("FieldHistory: empty");
    if (t <= snapshots.front().time) return snapshots.front();
    if (t >= snapshots.back().time) return snapshots.back();
    const auto it = std::lower_bound(snapshots.begin(), snapshots.end(), t,
                                     [](const DensityField& f, double v) { return f.time < v; });
    const DensityField& hi = *it;
    const DensityField& lo = *(it - 1);
    const double w = (t - lo.time) / (hi.time - lo.time);
    DensityField out{lo.grid, lo.values, t};
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = (1.0 - w) * lo.values[i] + w * hi.values[i];
    return out;
}

namespace {

double min_value(std::span<const double> v) { return *std::min_element(v.begin(), v.end()); }
double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

struct StepPlan {
    std::size_t steps;
    double h;
};

StepPlan plan_steps(double T, double dt) {
    if (!(T > 0.0) || !(dt > 0.0)) throw std::invalid_argument("solver: T and dt must be positive");
    const auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
    return {std::max<std::size_t>(steps, 1), T / static_cast<double>(std::max<std::size_t>(steps, 1))};
}

/// Shared time loop; `step` advances the state vector one step and returns
/// the amount absorbed at killed ends; `to_field` converts state to values.
template <typename Step, typename ToField>
FieldHistory run(std::vector<double> state, const Grid1D& grid, double T, const SolverOptions& opts,
                 bool check_boundary_mass, Step&& step, ToField&& to_field) {
    const auto [steps, h] = plan_steps(T, opts.dt);
    FieldHistory history;
    const bool nonnegative = min_value(state) >= 0.0;
    auto snapshot = [&](double t) {
        DensityField f{grid, to_field(state), t};
        if (check_boundary_mass) {
            const double mass = f.mass();
            if (mass > 0.0 && f.boundary_mass(5) > 1e-4 * mass) history.boundary_warning = true;
        }
        history.snapshots.push_back(std::move(f));
    };
    snapshot(0.0);
    for (std::size_t s = 1; s <= steps; ++s) {
        history.absorbed_mass += step(std::span<double>(state), h);
        if (nonnegative && min_value(state) < -1e-13 * max_abs(state)) history.positivity_preserved = false;
        if (s == steps || (opts.snapshot_every > 0 && s % opts.snapshot_every == 0))
            snapshot(s == steps ? T : static_cast<double>(s) * h);
    }
    return history;
}

}  // namespace

FieldHistory solve_backward_kolmogorov(const SdeModel& model, std::span<const double> phi0, double T,
                                       const Grid1D& grid, BoundaryCondition bc, const SolverOptions& opts) {
    if (phi0.size() != grid.size()) throw std::invalid_argument("solve_backward_kolmogorov: phi0 size mismatch");
    const KolmogorovOperator op(model, grid, bc);
    const auto [steps, h] = plan_steps(T, opts.dt);
    (void)steps;
    std::vector<double> u(phi0.begin(), phi0.end());
    op.kill_boundary(u);
    FieldHistory history;
    if (opts.stepper == Stepper::explicit_euler) {
        if (h > op.max_explicit_step() * (1.0 + 1e-12))
            throw CflError("explicit backward solve: dt " + std::to_string(h) + " exceeds " +
                           std::to_string(op.max_explicit_step()));
        history = run(std::move(u), grid, T, opts, false,
                      [&](std::span<double> v, double hh) {
                          op.explicit_step(v, hh, false);
                          return op.kill_boundary(v);
                      },
                      [](const std::vector<double>& v) { return v; });
    } else {
        const TridiagonalSolver solver = op.implicit_solver(h, false);
        history = run(std::move(u), grid, T, opts, false,
                      [&](std::span<double> v, double) {
                          op.kill_boundary(v);
                          solver.solve(v);
                          return 0.0;
                      },
                      [](const std::vector<double>& v) { return v; });
    }
    history.absorbed_mass = 0.0;
    history.upwinded_nodes = op.upwinded_nodes();
    return history;
}

FieldHistory solve_fokker_planck(const SdeModel& model, const DensityField& rho0, double T, BoundaryCondition bc,
                                 const SolverOptions& opts) {
    const Grid1D& grid = rho0.grid;
    const KolmogorovOperator op(model, grid, bc);
    const auto [steps, h] = plan_steps(T, opts.dt);
    (void)steps;
    const std::vector<double> w = grid.weights();
    std::vector<double> m(grid.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = w[i] * rho0.values[i];
    op.kill_boundary(m);
    auto to_density = [&w](const std::vector<double>& masses) {
        std::vector<double> rho(masses.size());
        for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = masses[i] / w[i];
        return rho;
    };
    FieldHistory history;
    if (opts.stepper == Stepper::explicit_euler) {
        if (h > op.max_explicit_step() * (1.0 + 1e-12))
            throw CflError("explicit Fokker-Planck solve: dt " + std::to_string(h) + " exceeds " +
                           std::to_string(op.max_explicit_step()));
        history = run(std::move(m), grid, T, opts, true,
                      [&](std::span<double> v, double hh) {
                          op.explicit_step(v, hh, true);
                          return op.kill_boundary(v);
                      },
                      to_density);
    } else {
        const TridiagonalSolver solver = op.implicit_solver(h, true);
        history = run(std::move(m), grid, T, opts, true,
                      [&](std::span<double> v, double) {
                          solver.solve(v);
                          return op.kill_boundary(v);
                      },
                      to_density);
    }
    for (auto& s : history.snapshots) s.time += rho0.time;
    history.upwinded_nodes = op.upwinded_nodes();
    return history;
}

double gradient_partition_function(const std::function<double(double)>& potential, const Grid1D& grid) {
    const auto u = grid.sample(potential);
    const auto w = grid.weights();
    double z = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) z += w[i] * std::exp(-u[i]);
    return z;
}

DensityField stationary_density_gradient(const std::function<double(double)>& potential, const Grid1D& grid) {
    const auto u = grid.sample(potential);
    const double u_min = *std::min_element(u.begin(), u.end());
    if (!std::isfinite(u_min)) throw std::invalid_argument("stationary_density_gradient: non-finite potential");
    DensityField rho{grid, std::vector<double>(u.size()), 0.0};
    for (std::size_t i = 0; i < u.size(); ++i) rho.values[i] = std::exp(-(u[i] - u_min));
    const double z = rho.mass();
    if (!std::isfinite(z) || !(z > 0.0))
        throw std::invalid_argument("stationary_density_gradient: e^{-U} is not normalizable on the grid");
    for (double& v : rho.values) v /= z;
    if (rho.boundary_mass(5) > 1e-4)
        throw std::invalid_argument("stationary_density_gradient: e^{-U} is not normalizable on the grid "
                                    "(mass accumulates at the grid ends)");
    return rho;
}

DensityField delta_density(const Grid1D& grid, double x0) {
    const double sd = 2.0 * grid.dx();
    DensityField rho{grid, grid.sample([&](double x) {
                         const double z = (x - x0) / sd;
                         return std::exp(-0.5 * z * z);
                     }),
                     0.0};
    const double m = rho.mass();
    for (double& v : rho.values) v /= m;
    return rho;
}

}  // namespace sdelab
