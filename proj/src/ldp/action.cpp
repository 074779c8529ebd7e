#include "sdelab/ldp/action.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sdelab {

ActionPath ActionPath::line(std::span<const double> x0, std::span<const double> y, const TimeGrid& grid) {
    if (x0.size() != y.size() || x0.empty()) throw std::invalid_argument("ActionPath::line: endpoint mismatch");
    ActionPath p{grid, x0.size(), std::vector<double>(grid.size() * x0.size()), std::nullopt};
    const double n = static_cast<double>(grid.n_steps());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double w = n == 0 ? 0.0 : static_cast<double>(k) / n;
        for (std::size_t i = 0; i < p.dim; ++i) p.values[k * p.dim + i] = (1.0 - w) * x0[i] + w * y[i];
    }
    return p;
}

ActionPath ActionPath::from_function(const std::function<double(double)>& phi, const TimeGrid& grid) {
    ActionPath p{grid, 1, std::vector<double>(grid.size()), std::nullopt};
    for (std::size_t k = 0; k < grid.size(); ++k) p.values[k] = phi(grid.node(k));
    return p;
}

ActionPath ActionPath::resampled(const TimeGrid& target) const {
    ActionPath p{target, dim, std::vector<double>(target.size() * dim), std::nullopt};
    const double n_src = static_cast<double>(grid.n_steps());
    const double n_dst = static_cast<double>(target.n_steps());
    for (std::size_t k = 0; k < target.size(); ++k) {
        const double s = n_dst == 0 ? 0.0 : static_cast<double>(k) / n_dst * n_src;
        const auto j = std::min(static_cast<std::size_t>(s), grid.n_steps() == 0 ? 0 : grid.n_steps() - 1);
        const double w = grid.n_steps() == 0 ? 0.0 : s - static_cast<double>(j);
        for (std::size_t i = 0; i < dim; ++i) {
            const double a = values[j * dim + i];
            const double b = grid.n_steps() == 0 ? a : values[(j + 1) * dim + i];
            p.values[k * dim + i] = (1.0 - w) * a + w * b;
        }
    }
    return p;
}

ActionPath ActionPath::slice(std::size_t k0, std::size_t k1) const {
    if (!(k0 <= k1 && k1 < grid.size())) throw std::out_of_range("ActionPath::slice: bad range");
    TimeGrid sub(grid.node(k0), k1 > k0 ? grid.node(k1) : grid.node(k0) + 1.0, k1 - k0);
    ActionPath p{sub, dim, std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(k0 * dim),
                                               values.begin() + static_cast<std::ptrdiff_t>((k1 + 1) * dim)),
                 std::nullopt};
    return p;
}

double schilder_rate(const ActionPath& path) {
    for (std::size_t i = 0; i < path.dim; ++i) {
        if (path.values[i] != 0.0) throw std::invalid_argument("schilder_rate: path must start at 0");
    }
    const double h = path.grid.step();
    double s = 0.0;
    for (std::size_t k = 0; k < path.grid.n_steps(); ++k) {
        for (std::size_t i = 0; i < path.dim; ++i) {
            const double v = (path.values[(k + 1) * path.dim + i] - path.values[k * path.dim + i]) / h;
            s += v * v;
        }
    }
    return 0.5 * s * h;
}

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

Mat diffusion_inverse(const SdeModel& model, std::span<const double> x, std::size_t k) {
    const auto n = static_cast<Eigen::Index>(model.n);
    Mat d(n, n);
    model.diffusion_matrix(x, std::span<double>(d.data(), model.n * model.n));
    Eigen::LDLT<Mat> ldlt(d);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || ldlt.vectorD().minCoeff() <= 1e-14 * d.norm() ||
        d.norm() == 0.0)
        throw std::domain_error("fw_rate: diffusion matrix singular at node " + std::to_string(k));
    return ldlt.solve(Mat::Identity(n, n));
}

Vec residual(const SdeModel& model, const ActionPath& p, std::size_t k, double h) {
    const auto n = static_cast<Eigen::Index>(model.n);
    Vec f(n);
    model.drift(p.at(k), std::span<double>(f.data(), model.n));
    Vec r(n);
    for (Eigen::Index i = 0; i < n; ++i)
        r(i) = (p.values[(k + 1) * model.n + static_cast<std::size_t>(i)] - p.values[k * model.n + static_cast<std::size_t>(i)]) / h - f(i);
    return r;
}

void check(const SdeModel& model, const ActionPath& path) {
    if (path.dim != model.n) throw std::invalid_argument("fw_rate: path dimension differs from the model");
    if (path.grid.n_steps() == 0) throw std::invalid_argument("fw_rate: path needs at least one step");
}

}  // namespace

double fw_rate(const SdeModel& model, const ActionPath& path) {
    check(model, path);
    const double h = path.grid.step();
    double s = 0.0;
    for (std::size_t k = 0; k < path.grid.n_steps(); ++k) {
        const Vec r = residual(model, path, k, h);
        s += r.dot(diffusion_inverse(model, path.at(k), k) * r);
    }
    return 0.5 * s * h;
}

double fw_rate_gradient(const SdeModel& model, const ActionPath& path, std::span<double> grad) {
    check(model, path);
    if (grad.size() != path.values.size()) throw std::invalid_argument("fw_rate_gradient: gradient size mismatch");
    const std::size_t n = model.n;
    const auto ni = static_cast<Eigen::Index>(n);
    const double h = path.grid.step();
    const double fd = 1e-5;
    std::fill(grad.begin(), grad.end(), 0.0);
    double s = 0.0;
    Mat jac(ni, ni), dplus(ni, ni), dminus(ni, ni);
    std::vector<double> xp(n);
    for (std::size_t k = 0; k < path.grid.n_steps(); ++k) {
        const Vec r = residual(model, path, k, h);
        const Mat m = diffusion_inverse(model, path.at(k), k);
        const Vec mr = m * r;
        s += r.dot(mr);
        for (std::size_t i = 0; i < n; ++i) grad[(k + 1) * n + i] += mr(static_cast<Eigen::Index>(i));
        // Row-major n x n Jacobian; Eigen is column-major, so this holds J^T.
        model.drift_jacobian_at(path.at(k), std::span<double>(jac.data(), n * n));
        const Vec jt_mr = jac * mr;
        for (std::size_t l = 0; l < n; ++l) {
            const auto li = static_cast<Eigen::Index>(l);
            double g = -mr(li) - h * jt_mr(li);
            const auto x = path.at(k);
            std::copy(x.begin(), x.end(), xp.begin());
            xp[l] = x[l] + fd;
            model.diffusion_matrix(xp, std::span<double>(dplus.data(), n * n));
            xp[l] = x[l] - fd;
            model.diffusion_matrix(xp, std::span<double>(dminus.data(), n * n));
            const Mat dd = (dplus - dminus) / (2.0 * fd);
            if (dd.norm() != 0.0) g -= 0.5 * h * mr.dot(dd * mr);
            grad[k * n + l] += g;
        }
    }
    return 0.5 * s * h;
}

ActionPath ode_path(const SdeModel& model, std::span<const double> x0, const TimeGrid& grid) {
    if (x0.size() != model.n) throw std::invalid_argument("ode_path: x0 has wrong dimension");
    ActionPath p{grid, model.n, std::vector<double>(grid.size() * model.n), std::nullopt};
    std::copy(x0.begin(), x0.end(), p.values.begin());
    std::vector<double> f(model.n);
    const double h = grid.step();
    for (std::size_t k = 0; k < grid.n_steps(); ++k) {
        model.drift(p.at(k), f);
        for (std::size_t i = 0; i < model.n; ++i) p.values[(k + 1) * model.n + i] = p.values[k * model.n + i] + h * f[i];
    }
    return p;
}

void write_csv(std::ostream& os, const ActionPath& path) {
    os << 't';
    for (std::size_t i = 0; i < path.dim; ++i) os << ",x" << i;
    os << '\n';
    char buf[64];
    const auto put = [&](double v) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        os.write(buf, ptr - buf);
    };
    for (std::size_t k = 0; k < path.grid.size(); ++k) {
        put(path.grid.node(k));
        for (std::size_t i = 0; i < path.dim; ++i) {
            os << ',';
            put(path.values[k * path.dim + i]);
        }
        os << '\n';
    }
}

}  // namespace sdelab
