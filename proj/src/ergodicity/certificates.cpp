#include "sdelab/ergodicity/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sdelab {

namespace {

double least_d(const Eigen::VectorXd& pv, const Eigen::VectorXd& v, double gamma) {
    return std::max(0.0, (pv - gamma * v).maxCoeff());
}

// Raises d until gamma V + d >= P V holds in floating point at every state.
double round_up_d(const Eigen::VectorXd& pv, const Eigen::VectorXd& v, double gamma, double d) {
    for (int iter = 0; iter < 200; ++iter) {
        double worst = 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i) worst = std::max(worst, pv(i) - (gamma * v(i) + d));
        if (worst <= 0.0) break;
        d = std::max(d + worst, std::nextafter(d, std::numeric_limits<double>::infinity()));
    }
    return d;
}

}  // namespace

DriftCertificate verify_geometric_drift(const DiscreteKernel& kernel, const Eigen::VectorXd& V) {
    if (static_cast<std::size_t>(V.size()) != kernel.size())
        throw std::invalid_argument("verify_geometric_drift: V has wrong size");
    if (V.minCoeff() < 0.0) throw std::invalid_argument("verify_geometric_drift: V must be nonnegative");
    const Eigen::VectorXd pv = kernel.apply(V);
    const auto cost = [&](double g) { return least_d(pv, V, g) / (1.0 - g); };

    constexpr int n = 1000;
    double best_g = 1.0 / n, best = cost(best_g);
    for (int j = 2; j < n; ++j) {
        const double g = static_cast<double>(j) / n;
        const double c = cost(g);
        if (c < best) {
            best = c;
            best_g = g;
        }
    }
    const double lo = std::max(best_g - 1.0 / n, 1e-9), hi = std::min(best_g + 1.0 / n, 1.0 - 1e-9);
    for (int j = 0; j <= n; ++j) {
        const double g = lo + (hi - lo) * j / n;
        const double c = cost(g);
        if (c < best || (c == best && g < best_g)) {
            best = c;
            best_g = g;
        }
    }
    DriftCertificate cert;
    cert.gamma = best_g;
    cert.d = round_up_d(pv, V, best_g, least_d(pv, V, best_g));
    cert.feasible = count_drift_violations(kernel, V, cert) == 0;
    cert.informative = cert.feasible && 2.0 * cert.d / (1.0 - cert.gamma) < V.maxCoeff();
    return cert;
}

std::size_t count_drift_violations(const DiscreteKernel& kernel, const Eigen::VectorXd& V,
                                   const DriftCertificate& cert, double slack) {
    const Eigen::VectorXd pv = kernel.apply(V);
    std::size_t bad = 0;
    for (Eigen::Index i = 0; i < V.size(); ++i) {
        if (pv(i) > cert.gamma * V(i) + cert.d + slack) ++bad;
    }
    return bad;
}

MinorisationCert verify_minorisation(const DiscreteKernel& kernel, double R, const Eigen::VectorXd& V,
                                     const DriftCertificate* drift) {
    if (static_cast<std::size_t>(V.size()) != kernel.size())
        throw std::invalid_argument("verify_minorisation: V has wrong size");
    if (drift) {
        const double need = 2.0 * drift->d / (1.0 - drift->gamma);
        if (!(R > need))
            throw std::invalid_argument("verify_minorisation: R must exceed 2d/(1-gamma) = " + std::to_string(need));
    }
    MinorisationCert cert;
    cert.R = R;
    for (Eigen::Index i = 0; i < V.size(); ++i) {
        if (V(i) < R) cert.C.push_back(static_cast<std::size_t>(i));
    }
    if (cert.C.empty()) throw std::invalid_argument("verify_minorisation: C = {V < R} is empty");
    const auto n = static_cast<Eigen::Index>(kernel.size());
    Eigen::VectorXd mins = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    for (std::size_t x : cert.C) mins = mins.cwiseMin(kernel.matrix().row(static_cast<Eigen::Index>(x)).transpose());
    cert.alpha = mins.sum();
    if (!(cert.alpha > 0.0)) throw std::runtime_error("verify_minorisation: alpha = 0, rows in C have disjoint support");
    cert.nu = mins / cert.alpha;
    for (Eigen::Index y = 0; y < n; ++y) {
        while (cert.alpha * cert.nu(y) > mins(y)) cert.nu(y) = std::nextafter(cert.nu(y), 0.0);
    }
    return cert;
}

std::size_t count_minorisation_violations(const DiscreteKernel& kernel, const MinorisationCert& cert,
                                          double slack) {
    std::size_t bad = 0;
    for (std::size_t x : cert.C) {
        for (Eigen::Index y = 0; y < cert.nu.size(); ++y) {
            if (kernel.matrix()(static_cast<Eigen::Index>(x), y) < cert.alpha * cert.nu(y) - slack) ++bad;
        }
    }
    return bad;
}

}  // namespace sdelab
