#include "sdelab/ldp/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <boost/math/tools/minima.hpp>

namespace sdelab {

namespace {

using Mat = Eigen::MatrixXd;

Mat diffusion_inverse(const SdeModel& model, std::span<const double> x) {
    const auto n = static_cast<Eigen::Index>(model.n);
    Mat d(n, n);
    model.diffusion_matrix(x, std::span<double>(d.data(), model.n * model.n));
    return d.ldlt().solve(Mat::Identity(n, n));
}

Mat curvature(const SdeModel& model, const ActionPath& p, std::size_t k, const Mat& m) {
    const std::size_t n = model.n;
    const auto ni = static_cast<Eigen::Index>(n);
    const double h = p.grid.step(), fd = 1e-5;
    const auto x = p.at(k);
    Eigen::VectorXd f(ni), r(ni);
    model.drift(x, std::span<double>(f.data(), n));
    for (std::size_t i = 0; i < n; ++i)
        r(static_cast<Eigen::Index>(i)) = (p.values[(k + 1) * n + i] - p.values[k * n + i]) / h - f(static_cast<Eigen::Index>(i));
    const Eigen::VectorXd mr = m * r;
    std::vector<double> xp(x.begin(), x.end()), jp(n * n), jm(n * n);
    Mat out = Mat::Zero(ni, ni);
    for (std::size_t q = 0; q < n; ++q) {
        xp[q] = x[q] + fd;
        model.drift_jacobian_at(xp, jp);
        xp[q] = x[q] - fd;
        model.drift_jacobian_at(xp, jm);
        xp[q] = x[q];
        // column q of sum_i mr_i d^2 f_i / dx_l dx_q
        for (std::size_t l = 0; l < n; ++l) {
            double v = 0.0;
            for (std::size_t i = 0; i < n; ++i) v += mr(static_cast<Eigen::Index>(i)) * (jp[i * n + l] - jm[i * n + l]);
            out(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(q)) = -h * v / (2.0 * fd);
        }
    }
    return 0.5 * (out + out.transpose());
}

// h * sum_k J_k^T M_k J_k restricted to the interior nodes 1..N-1, where J_k
// is the Jacobian of r_k with respect to (phi_k, phi_{k+1}). With `newton`
// the drift curvature term -h sum_i (M_k r_k)_i Hess f_i(phi_k) is added
// (central differences of the drift Jacobian; D is treated as frozen).
Eigen::SparseMatrix<double> action_hessian(const SdeModel& model, const ActionPath& p, bool newton) {
    const std::size_t n = model.n, N = p.grid.n_steps();
    const auto ni = static_cast<Eigen::Index>(n);
    const double h = p.grid.step();
    const auto dim = static_cast<Eigen::Index>((N - 1) * n);
    std::vector<Eigen::Triplet<double>> t;
    Mat jac(ni, ni);
    const auto add_block = [&](std::size_t bi, std::size_t bj, const Mat& b) {
        for (Eigen::Index i = 0; i < ni; ++i) {
            for (Eigen::Index j = 0; j < ni; ++j) {
                if (b(i, j) != 0.0)
                    t.emplace_back(static_cast<Eigen::Index>((bi - 1) * n) + i, static_cast<Eigen::Index>((bj - 1) * n) + j,
                                   b(i, j));
            }
        }
    };
    for (std::size_t k = 0; k < N; ++k) {
        const Mat m = diffusion_inverse(model, p.at(k));
        model.drift_jacobian_at(p.at(k), std::span<double>(jac.data(), n * n));
        // jac holds J_f^T (row-major data read column-major).
        const Mat a = -Mat::Identity(ni, ni) / h - jac.transpose();
        if (k >= 1) {
            Mat block = h * a.transpose() * m * a;
            if (newton) block += curvature(model, p, k, m);
            add_block(k, k, block);
        }
        if (k + 1 <= N - 1) add_block(k + 1, k + 1, m / h);
        if (k >= 1 && k + 1 <= N - 1) {
            const Mat off = a.transpose() * m;
            add_block(k, k + 1, off);
            add_block(k + 1, k, off.transpose());
        }
    }
    Eigen::SparseMatrix<double> H(dim, dim);
    H.setFromTriplets(t.begin(), t.end());
    return H;
}

}  // namespace

ActionMinimum minimize_action(const SdeModel& model, std::span<const double> x0, std::span<const double> y, double T,
                              std::size_t n_steps, const MinimizeOptions& opts, const ActionPath* warm_start) {
    if (!(T > 0.0)) throw std::invalid_argument("minimize_action: T must be positive");
    if (n_steps < 2) throw std::invalid_argument("minimize_action: need at least 2 steps");
    if (x0.size() != model.n || y.size() != model.n)
        throw std::invalid_argument("minimize_action: endpoint dimension differs from the model");
    const TimeGrid grid(0.0, T, n_steps);
    const std::size_t n = model.n;
    ActionPath path = ActionPath::line(x0, y, grid);
    if (warm_start) {
        path = warm_start->resampled(grid);
    } else if (opts.init == PathInit::ode) {
        path = ode_path(model, x0, grid);
        const auto end = path.at(n_steps);
        std::vector<double> gap(n);
        for (std::size_t i = 0; i < n; ++i) gap[i] = y[i] - end[i];
        for (std::size_t k = 0; k <= n_steps; ++k) {
            for (std::size_t i = 0; i < n; ++i)
                path.values[k * n + i] += static_cast<double>(k) / static_cast<double>(n_steps) * gap[i];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        path.values[i] = x0[i];
        path.values[n_steps * n + i] = y[i];
    }

    const double h = grid.step();
    const auto interior = static_cast<Eigen::Index>((n_steps - 1) * n);
    std::vector<double> grad(path.values.size());
    ActionMinimum out;
    double s = fw_rate_gradient(model, path, grad);
    out.history.push_back(s);
    Eigen::VectorXd g(interior), trial_values;
    for (std::size_t it = 0;; ++it) {
        for (Eigen::Index i = 0; i < interior; ++i) g(i) = grad[n + static_cast<std::size_t>(i)];
        out.residual = interior == 0 ? 0.0 : g.cwiseAbs().maxCoeff() / h;
        out.iterations = it;
        if (out.residual < opts.tol) {
            out.converged = true;
            break;
        }
        if (it == opts.max_iter) break;
        Eigen::VectorXd d;
        for (bool newton : {true, false}) {
            Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(action_hessian(model, path, newton));
            if (solver.info() != Eigen::Success || (newton && solver.vectorD().minCoeff() <= 0.0)) continue;
            d = -solver.solve(g);
            if (d.size() == interior && d.allFinite() && d.dot(g) < 0.0) break;
            d.resize(0);
        }
        if (d.size() != interior) d = -g / h;
        const double slope = d.dot(g);
        double step = 1.0;
        bool accepted = false;
        ActionPath trial = path;
        for (int ls = 0; ls < 60; ++ls) {
            for (Eigen::Index i = 0; i < interior; ++i)
                trial.values[n + static_cast<std::size_t>(i)] = path.values[n + static_cast<std::size_t>(i)] + step * d(i);
            double st = std::numeric_limits<double>::infinity();
            try {
                st = fw_rate(model, trial);
            } catch (const std::domain_error&) {
            }
            if (std::isfinite(st) && st <= s + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        path = std::move(trial);
        s = fw_rate_gradient(model, path, grad);
        out.history.push_back(s);
    }
    path.action = s;
    out.path = std::move(path);
    return out;
}

QuasipotentialResult quasipotential(const SdeModel& model, std::span<const double> x_star,
                                    std::span<const double> y, std::vector<double> T_list,
                                    const QuasipotentialOptions& opts) {
    if (T_list.empty()) throw std::invalid_argument("quasipotential: empty T_list");
    if (!(opts.dt > 0.0)) throw std::invalid_argument("quasipotential: dt must be positive");
    std::vector<double> f(model.n);
    model.drift(x_star, f);
    double fn = 0.0;
    for (double v : f) fn = std::max(fn, std::abs(v));
    if (fn >= 1e-6) throw std::invalid_argument("quasipotential: x_star is not an equilibrium");
    std::sort(T_list.begin(), T_list.end());

    QuasipotentialResult r;
    r.value = std::numeric_limits<double>::infinity();
    bool same = true;
    for (std::size_t i = 0; i < model.n; ++i) same = same && x_star[i] == y[i];
    if (same) {
        r.value = 0.0;
        r.minimizing_T = T_list.front();
        r.path = ActionPath::line(x_star, y, TimeGrid(0.0, T_list.front(), 2));
        r.path.action = 0.0;
        r.T_values = {T_list.front()};
        r.actions = {0.0};
        r.envelope = {0.0};
        return r;
    }
    std::optional<ActionPath> previous;
    for (double T : T_list) {
        const auto steps = static_cast<std::size_t>(std::ceil(T / opts.dt - 1e-9));
        const ActionMinimum m =
            minimize_action(model, x_star, y, T, std::max<std::size_t>(steps, 2), opts.minimize,
                            previous ? &*previous : nullptr);
        const double a = *m.path.action;
        r.T_values.push_back(T);
        r.actions.push_back(a);
        r.envelope.push_back(r.envelope.empty() ? a : std::min(r.envelope.back(), a));
        r.converged = r.converged && m.converged;
        if (a < r.value) {
            r.value = a;
            r.minimizing_T = T;
            r.path = m.path;
        }
        previous = m.path;
    }
    return r;
}

BoundaryQuasipotential boundary_quasipotential(const SdeModel& model, std::span<const double> x_star,
                                               const std::function<std::vector<double>(double)>& boundary,
                                               const std::vector<double>& T_list, const QuasipotentialOptions& opts,
                                               std::size_t n_samples, Execution exec) {
    if (n_samples == 0) throw std::invalid_argument("boundary_quasipotential: need samples");
    std::vector<QuasipotentialResult> results(n_samples);
    for_each_index(n_samples, exec, [&](std::size_t i) {
        const auto y = boundary(static_cast<double>(i) / static_cast<double>(n_samples));
        results[i] = quasipotential(model, x_star, y, T_list, opts);
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < n_samples; ++i) {
        if (results[i].value < results[best].value) best = i;
    }
    BoundaryQuasipotential out;
    out.parameter = static_cast<double>(best) / static_cast<double>(n_samples);
    out.best = results[best];
    const double width = 1.0 / static_cast<double>(n_samples);
    const auto value_at = [&](double s) {
        const double u = s - std::floor(s);
        return quasipotential(model, x_star, boundary(u), T_list, opts).value;
    };
    std::uintmax_t max_iter = 20;
    const auto [s, v] =
        boost::math::tools::brent_find_minima(value_at, out.parameter - width, out.parameter + width, 20, max_iter);
    if (v < out.best.value) {
        out.parameter = s - std::floor(s);
        out.best = quasipotential(model, x_star, boundary(out.parameter), T_list, opts);
    }
    out.value = out.best.value;
    out.point = boundary(out.parameter);
    return out;
}

}  // namespace sdelab
