#include "sdelab/ergodicity/birkhoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sdelab/core/stats.hpp"

namespace sdelab {

ConeBounds fit_cone_bounds(const Eigen::MatrixXd& p) {
    if (p.size() == 0) throw std::invalid_argument("fit_cone_bounds: empty matrix");
    if (!(p.minCoeff() > 0.0)) throw std::invalid_argument("fit_cone_bounds: kernel is not uniformly positive");
    ConeBounds b;
    b.s = p.rowwise().sum();
    b.m.resize(p.cols());
    for (Eigen::Index y = 0; y < p.cols(); ++y) {
        double m = std::numeric_limits<double>::infinity();
        for (Eigen::Index x = 0; x < p.rows(); ++x) m = std::min(m, p(x, y) / b.s(x));
        for (Eigen::Index x = 0; x < p.rows(); ++x) {
            while (b.s(x) * m > p(x, y)) m = std::nextafter(m, 0.0);
        }
        b.m(y) = m;
    }
    b.L = 1.0;
    for (Eigen::Index x = 0; x < p.rows(); ++x) {
        for (Eigen::Index y = 0; y < p.cols(); ++y) {
            b.L = std::max(b.L, p(x, y) / (b.s(x) * b.m(y)));
            while (b.L * b.s(x) * b.m(y) < p(x, y)) b.L = std::nextafter(b.L, std::numeric_limits<double>::infinity());
        }
    }
    return b;
}

std::size_t count_cone_violations(const Eigen::MatrixXd& p, const ConeBounds& b) {
    std::size_t bad = 0;
    for (Eigen::Index x = 0; x < p.rows(); ++x) {
        for (Eigen::Index y = 0; y < p.cols(); ++y) {
            const double sm = b.s(x) * b.m(y);
            if (sm > p(x, y) || p(x, y) > b.L * sm) ++bad;
        }
    }
    return bad;
}

double hilbert_metric(const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
    if (f.size() != g.size() || f.size() == 0) throw std::invalid_argument("hilbert_metric: size mismatch");
    if (!(f.minCoeff() > 0.0) || !(g.minCoeff() > 0.0)) return std::numeric_limits<double>::infinity();
    const double a = (f.array() / g.array()).minCoeff();
    const double b = (g.array() / f.array()).minCoeff();
    return std::abs(std::log(a * b));
}

namespace {

Eigen::VectorXd log_uniform(Eigen::Index n, GaussianStream& s, double span) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = std::exp(span * (2.0 * s.uniform() - 1.0));
    return v;
}

}  // namespace

DiameterEstimate projective_diameter(const Eigen::MatrixXd& p, std::size_t n_probe, const GaussianStream& stream) {
    if (p.rows() != p.cols() || p.size() == 0) throw std::invalid_argument("projective_diameter: need a square matrix");
    DiameterEstimate out;
    for (Eigen::Index i = 0; i < p.cols(); ++i) {
        for (Eigen::Index j = i + 1; j < p.cols(); ++j) {
            out.delta = std::max(out.delta, hilbert_metric(p.col(i), p.col(j)));
            ++out.probes;
        }
    }
    GaussianStream s = stream;
    for (std::size_t k = 0; k < n_probe; ++k) {
        const Eigen::VectorXd f = p * log_uniform(p.cols(), s, 10.0);
        const Eigen::VectorXd g = p * log_uniform(p.cols(), s, 10.0);
        out.delta = std::max(out.delta, hilbert_metric(f, g));
        ++out.probes;
    }
    return out;
}

double projective_contraction_ratio(const Eigen::MatrixXd& p, std::size_t n_pairs, const GaussianStream& stream) {
    GaussianStream s = stream;
    double worst = 0.0;
    for (std::size_t k = 0; k < n_pairs; ++k) {
        const double span = 0.01 + 5.0 * s.uniform();
        const Eigen::VectorXd f = log_uniform(p.cols(), s, span);
        const Eigen::VectorXd g = log_uniform(p.cols(), s, span);
        const double before = hilbert_metric(f, g);
        if (!(before > 1e-12)) continue;
        worst = std::max(worst, hilbert_metric(p * f, p * g) / before);
    }
    return worst;
}

JentzschResult power_iteration_jentzsch(const Eigen::MatrixXd& p, double tol, std::size_t max_iter) {
    if (p.rows() != p.cols() || p.size() == 0)
        throw std::invalid_argument("power_iteration_jentzsch: need a square matrix");
    if (!(p.minCoeff() >= 0.0)) throw std::invalid_argument("power_iteration_jentzsch: negative entry");
    const Eigen::Index n = p.rows();
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    Eigen::VectorXd h(n), pi(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double v = static_cast<double>(i + 1) * golden;
        h(i) = 1.0 + (v - std::floor(v));
    }
    pi = h / h.sum();
    h /= h.cwiseAbs().maxCoeff();

    JentzschResult out;
    std::vector<double> theta;
    for (std::size_t it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd ph = p * h;
        Eigen::VectorXd pip = p.transpose() * pi;
        theta.push_back(hilbert_metric(ph, h));
        const double nh = ph.cwiseAbs().maxCoeff(), npi = pip.sum();
        if (!(nh > 0.0) || !(npi > 0.0)) throw std::runtime_error("power_iteration_jentzsch: iterate vanished");
        h = ph / nh;
        pi = pip / npi;
        const Eigen::VectorXd ph1 = p * h;
        const Eigen::VectorXd pip1 = p.transpose() * pi;
        const double lambda = pi.dot(ph1) / pi.dot(h);
        const double rr = (ph1 - lambda * h).cwiseAbs().maxCoeff() / h.cwiseAbs().maxCoeff();
        const double lr = (pip1 - lambda * pi).cwiseAbs().maxCoeff() / pi.cwiseAbs().maxCoeff();
        if (rr <= tol && lr <= tol) {
            out.lambda0 = lambda;
            out.h0 = h;
            out.pi0 = pi;
            out.iterations = it;
            out.right_residual = rr;
            out.left_residual = lr;
            break;
        }
        if (it == max_iter) throw std::runtime_error("power_iteration_jentzsch: no convergence in max_iter");
    }

    std::vector<double> ns, logs;
    for (std::size_t k = 0; k < theta.size(); ++k) {
        if (theta[k] > 1e-13 && std::isfinite(theta[k])) {
            ns.push_back(static_cast<double>(k));
            logs.push_back(std::log(theta[k]));
        }
    }
    if (ns.size() >= 3) {
        const std::size_t skip = ns.size() / 3;
        const auto fit = linear_fit(std::span(ns).subspan(skip), std::span(logs).subspan(skip));
        out.observed_rate = std::exp(fit.slope);
    } else if (ns.size() == 2) {
        out.observed_rate = std::exp(logs[1] - logs[0]);
    }
    if (p.minCoeff() > 0.0) {
        const double L = fit_cone_bounds(p).L;
        out.rate_bound = 1.0 - 1.0 / (L * L);
    }
    return out;
}

}  // namespace sdelab
