#include "sdelab/ergodicity/kernel.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "sdelab/core/integrators.hpp"
#include "sdelab/core/random.hpp"
#include "sdelab/pde/kolmogorov.hpp"

namespace sdelab {

DiscreteKernel::DiscreteKernel(Eigen::MatrixXd p, std::vector<double> states, double t_step)
    : p_(std::move(p)), states_(std::move(states)), t_step_(t_step) {
    if (p_.rows() == 0 || p_.rows() != p_.cols()) throw std::invalid_argument("DiscreteKernel: need a square matrix");
    const auto n = static_cast<std::size_t>(p_.rows());
    if (states_.empty()) {
        states_.resize(n);
        for (std::size_t i = 0; i < n; ++i) states_[i] = static_cast<double>(i);
    }
    if (states_.size() != n) throw std::invalid_argument("DiscreteKernel: states do not match the matrix");
    for (Eigen::Index i = 0; i < p_.rows(); ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < p_.cols(); ++j) {
            double& v = p_(i, j);
            if (!std::isfinite(v)) throw std::invalid_argument("DiscreteKernel: non-finite entry");
            if (v < 0.0) {
                if (v < -1e-13) throw std::invalid_argument("DiscreteKernel: negative entry");
                v = 0.0;
            }
            sum += v;
        }
        if (sum > 1.0 + 1e-12) throw std::invalid_argument("DiscreteKernel: row sum exceeds 1");
        if (sum < 1.0 - 1e-12) substochastic_ = true;
    }
}

DiscreteKernel DiscreteKernel::row_normalized(const Eigen::MatrixXd& weights) {
    Eigen::MatrixXd p = weights;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        const double s = p.row(i).sum();
        if (!(s > 0.0)) throw std::invalid_argument("DiscreteKernel::row_normalized: row with zero mass");
        p.row(i) /= s;
    }
    return DiscreteKernel(std::move(p));
}

std::vector<double> DiscreteKernel::leaked() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = 1.0 - p_.row(static_cast<Eigen::Index>(i)).sum();
    return out;
}

Eigen::VectorXd DiscreteKernel::sample(const std::function<double(double)>& v) const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i) out(static_cast<Eigen::Index>(i)) = v(states_[i]);
    return out;
}

namespace {

DiscreteKernel pde_kernel(const SdeModel& model, const Grid1D& grid, double t_step, const KernelOptions& opts) {
    if (opts.pde_steps == 0) throw std::invalid_argument("discretize_kernel: pde_steps must be positive");
    const KolmogorovOperator op(model, grid, opts.bc);
    const TridiagonalSolver solver = op.implicit_solver(t_step / static_cast<double>(opts.pde_steps), false);
    const std::size_t n = grid.size();
    const bool killed = opts.bc == BoundaryCondition::dirichlet_zero;
    const std::size_t first = killed ? 1 : 0;
    const std::size_t m = killed ? n - 2 : n;
    Eigen::MatrixXd p(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for_each_index(m, opts.exec, [&](std::size_t col) {
        std::vector<double> v(n, 0.0);
        v[first + col] = 1.0;
        for (std::size_t s = 0; s < opts.pde_steps; ++s) solver.solve(v);
        for (std::size_t row = 0; row < m; ++row)
            p(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = v[first + row];
    });
    std::vector<double> states(m);
    for (std::size_t i = 0; i < m; ++i) states[i] = grid.node(first + i);
    return DiscreteKernel(std::move(p), std::move(states), t_step);
}

DiscreteKernel mc_kernel(const SdeModel& model, const Grid1D& grid, double t_step, const KernelOptions& opts) {
    if (opts.mc_paths == 0 || opts.mc_steps == 0)
        throw std::invalid_argument("discretize_kernel: mc_paths and mc_steps must be positive");
    const std::size_t n = grid.size();
    const double h = t_step / static_cast<double>(opts.mc_steps);
    const double lo = grid.x_min() - 0.5 * grid.dx(), hi = grid.x_max() + 0.5 * grid.dx();
    const GaussianStream root(opts.seed, 0x6b65726eULL);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for_each_index(n, opts.exec, [&](std::size_t row) {
        GaussianStream noise = root.substream(row);
        EulerStepper stepper(model);
        const double w = 1.0 / static_cast<double>(opts.mc_paths);
        for (std::size_t path = 0; path < opts.mc_paths; ++path) {
            double x = grid.node(row);
            std::span<double> xs(&x, 1);
            for (std::size_t s = 0; s < opts.mc_steps; ++s) stepper.step(xs, h, noise);
            if (!std::isfinite(x)) throw BlowUpError(opts.mc_steps, "discretize_kernel row " + std::to_string(row));
            if (x < lo || x >= hi) continue;
            p(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(grid.nearest(x))) += w;
        }
        if (p.row(static_cast<Eigen::Index>(row)).sum() == 0.0)
            throw std::runtime_error("discretize_kernel: row " + std::to_string(row) +
                                     " received no samples; increase mc_paths");
    });
    return DiscreteKernel(std::move(p), grid.nodes(), t_step);
}

}  // namespace

DiscreteKernel discretize_kernel(const SdeModel& model, const Grid1D& grid, double t_step,
                                 const KernelOptions& opts) {
    if (!(t_step > 0.0)) throw std::invalid_argument("discretize_kernel: t_step must be positive");
    if (model.n != 1) throw std::invalid_argument("discretize_kernel: scalar model required");
    const DiscreteKernel k =
        opts.method == KernelMethod::pde ? pde_kernel(model, grid, t_step, opts) : mc_kernel(model, grid, t_step, opts);
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (!(k.matrix().row(static_cast<Eigen::Index>(i)).sum() > 0.0))
            throw std::runtime_error("discretize_kernel: row " + std::to_string(i) + " has zero mass");
    }
    return k;
}

void write_kernel_csv(std::ostream& os, const DiscreteKernel& kernel) {
    char buf[64];
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        for (std::size_t j = 0; j < kernel.size(); ++j) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), kernel(i, j));
            if (j) os << ',';
            os.write(buf, ptr - buf);
        }
        os << '\n';
    }
}

void write_kernel_sidecar(std::ostream& os, const DiscreteKernel& kernel) {
    nlohmann::ordered_json j;
    j["size"] = kernel.size();
    j["states"] = kernel.states();
    j["substochastic"] = kernel.substochastic();
    j["t_step"] = kernel.t_step();
    os << j.dump(2) << '\n';
}

DiscreteKernel read_kernel(std::istream& csv, std::istream& sidecar) {
    const auto meta = nlohmann::json::parse(sidecar);
    const auto n = meta.at("size").get<std::size_t>();
    Eigen::MatrixXd p(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::string line;
    std::size_t row = 0;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        if (row >= n) throw std::runtime_error("read_kernel: more rows than declared");
        std::size_t col = 0;
        const char* it = line.data();
        const char* end = line.data() + line.size();
        while (it < end) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(it, end, v);
            if (ec != std::errc() || col >= n)
                throw std::runtime_error("read_kernel: bad entry in row " + std::to_string(row + 1));
            p(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col++)) = v;
            it = ptr;
            if (it < end && *it == ',') ++it;
        }
        if (col != n) throw std::runtime_error("read_kernel: row " + std::to_string(row + 1) + " has wrong length");
        ++row;
    }
    if (row != n) throw std::runtime_error("read_kernel: fewer rows than declared");
    return DiscreteKernel(std::move(p), meta.at("states").get<std::vector<double>>(), meta.at("t_step").get<double>());
}

}  // namespace sdelab
