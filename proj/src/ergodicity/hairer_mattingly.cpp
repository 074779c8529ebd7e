#include "sdelab/ergodicity/hairer_mattingly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdelab {

HmConstants hm_constants(double gamma, double d, double alpha, double R, double alpha0, double gamma0) {
    if (!(d > 0.0) || !(R > 0.0)) throw std::invalid_argument("hm_constants: need d > 0 and R > 0");
    if (!(0.0 < alpha0 && alpha0 < alpha)) throw std::invalid_argument("hm_constants: need 0 < alpha0 < alpha");
    const double lower = gamma + 2.0 * d / R;
    if (!(lower < 1.0)) throw std::invalid_argument("hm_constants: gamma + 2d/R >= 1, no admissible gamma0");
    if (!(lower < gamma0 && gamma0 < 1.0)) throw std::invalid_argument("hm_constants: need gamma + 2d/R < gamma0 < 1");
    HmConstants out;
    out.beta = alpha0 / d;
    const double rb = R * out.beta;
    out.alpha_bar = std::max(1.0 - (alpha - alpha0), (2.0 + rb * gamma0) / (2.0 + rb));
    return out;
}

double rho_beta_distance(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu, const Eigen::VectorXd& V,
                         double beta) {
    if (mu.size() != nu.size() || mu.size() != V.size())
        throw std::invalid_argument("rho_beta_distance: size mismatch");
    if (!(beta >= 0.0)) throw std::invalid_argument("rho_beta_distance: need beta >= 0");
    return ((1.0 + beta * V.array()) * (mu - nu).array().abs()).sum();
}

namespace {

Eigen::VectorXd random_probability(Eigen::Index n, GaussianStream& s, int kind) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    const auto pick = [&] { return std::min<Eigen::Index>(static_cast<Eigen::Index>(s.uniform() * n), n - 1); };
    if (kind == 0 || kind == 2) {
        for (Eigen::Index i = 0; i < n; ++i) v(i) = std::exp(20.0 * s.uniform() - 10.0);
        v /= v.sum();
    }
    if (kind == 1) v(pick()) = 1.0;
    if (kind == 2) {
        v *= 0.5;
        v(pick()) += 0.5;
    }
    return v;
}

}  // namespace

HmContractionReport verify_hm_contraction(const DiscreteKernel& kernel, const Eigen::VectorXd& V, double beta,
                                          double alpha_bar, std::size_t n_pairs, const GaussianStream& stream,
                                          double slack) {
    HmContractionReport report;
    report.n_pairs = n_pairs;
    report.slack = slack;
    const auto n = static_cast<Eigen::Index>(kernel.size());
    GaussianStream s = stream;
    for (std::size_t p = 0; p < n_pairs; ++p) {
        const int kind = static_cast<int>(p % 3);
        const Eigen::VectorXd mu = random_probability(n, s, kind);
        const Eigen::VectorXd nu = random_probability(n, s, kind);
        const double before = rho_beta_distance(mu, nu, V, beta);
        if (before == 0.0) continue;
        const double ratio = rho_beta_distance(kernel.push(mu), kernel.push(nu), V, beta) / before;
        report.max_ratio = std::max(report.max_ratio, ratio);
        if (ratio > alpha_bar + slack) ++report.violations;
    }
    return report;
}

std::vector<double> rho_beta_decay(const DiscreteKernel& kernel, const Eigen::VectorXd& V, double beta,
                                   std::size_t x, const Eigen::VectorXd& pi, std::size_t n_steps) {
    if (x >= kernel.size()) throw std::out_of_range("rho_beta_decay: start state out of range");
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(kernel.size()));
    mu(static_cast<Eigen::Index>(x)) = 1.0;
    std::vector<double> out;
    out.reserve(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k) {
        out.push_back(rho_beta_distance(mu, pi, V, beta));
        mu = kernel.push(mu);
    }
    return out;
}

}  // namespace sdelab
