#include "sdelab/ldp/exit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "sdelab/core/stats.hpp"
#include "sdelab/exit/exit_mc.hpp"

namespace sdelab {

double ou_exit_rate(double x0, double h, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("ou_exit_rate: T must be positive");
    if (!(0.0 <= x0 && x0 < h)) throw std::invalid_argument("ou_exit_rate: need 0 <= x0 < h");
    const double a = h * std::exp(0.5 * T) - x0 * std::exp(-0.5 * T);
    return a * a / (2.0 * std::sinh(T));
}

double ou_exit_rate_limit(double h) { return h * h; }

ArrheniusReport arrhenius_check(const Potential& U, std::vector<double> eps_list, const Domain& domain,
                                std::span<const double> x0, double v_bar, const ArrheniusOptions& opts,
                                const GaussianStream& stream) {
    if (eps_list.size() < 3) throw std::invalid_argument("arrhenius_check: need at least 3 noise levels");
    for (double e : eps_list) {
        if (!(e > 0.0)) throw std::invalid_argument("arrhenius_check: eps must be positive");
    }
    std::sort(eps_list.begin(), eps_list.end(), std::greater<>());
    ArrheniusReport r;
    r.v_bar = v_bar;
    for (double e : eps_list) {
        ExitOptions eo;
        eo.h = opts.h;
        eo.n_paths = opts.n_paths;
        eo.t_max = opts.t_max_factor * std::max(1.0, std::exp(v_bar / e));
        eo.exec = opts.exec;
        const SdeModel model = SdeModel::gradient_with_noise(U, std::sqrt(e), x0.size());
        const ExitStatistics st = mc_exit(model, x0, domain, eo, stream);
        if (!st.valid || st.fraction_censored > opts.max_censored)
            throw std::runtime_error("arrhenius_check: run at eps = " + std::to_string(e) + " is dominated by censoring");
        r.eps.push_back(e);
        r.mean_tau.push_back(st.mean_time);
        r.std_error.push_back(st.time_std_error);
        r.eps_log_mean.push_back(e * std::log(st.mean_time));
        r.eps_log_stderr.push_back(e * st.time_std_error / st.mean_time);
        r.fraction_censored.push_back(st.fraction_censored);
    }
    const auto fit = linear_fit(r.eps, r.eps_log_mean);
    r.intercept = fit.intercept;
    r.slope = fit.slope;
    r.monotone = true;
    for (std::size_t i = 1; i < r.eps.size(); ++i) {
        if (std::abs(r.eps_log_mean[i] - v_bar) >= std::abs(r.eps_log_mean[i - 1] - v_bar)) r.monotone = false;
    }
    r.relative_error_smallest = std::abs(r.eps_log_mean.back() - v_bar) / std::abs(v_bar);
    return r;
}

double eyring_kramers_time(const Potential& U, std::span<const double> x_star, std::span<const double> z_star,
                           double eps) {
    if (x_star.size() != z_star.size() || x_star.empty())
        throw std::invalid_argument("eyring_kramers_time: dimension mismatch");
    if (!(eps > 0.0)) throw std::invalid_argument("eyring_kramers_time: eps must be positive");
    const auto n = static_cast<Eigen::Index>(x_star.size());
    const auto eig = [&](std::span<const double> p) {
        const auto h = U.hessian_at(p);
        Eigen::MatrixXd m = Eigen::Map<const Eigen::MatrixXd>(h.data(), n, n);
        m = 0.5 * (m + m.transpose());
        return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues().eval();
    };
    const Eigen::VectorXd hx = eig(x_star), hz = eig(z_star);
    if (!(hx.minCoeff() > 0.0)) throw std::invalid_argument("eyring_kramers_time: x_star is not a nondegenerate minimum");
    Eigen::Index negative = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (hz(i) < 0.0) ++negative;
        if (hz(i) == 0.0) throw std::invalid_argument("eyring_kramers_time: degenerate Hessian at z_star");
    }
    if (negative != 1) throw std::invalid_argument("eyring_kramers_time: z_star is not a saddle of index 1");
    const double lambda_minus = hz.minCoeff();
    const double prefactor = 2.0 * std::numbers::pi / std::abs(lambda_minus) *
                             std::sqrt(std::abs(hz.prod()) / hx.prod());
    return prefactor * std::exp(2.0 * (U(z_star) - U(x_star)) / eps);
}

}  // namespace sdelab
