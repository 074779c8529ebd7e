#include "sdelab/ldp/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdelab {

namespace {

void check(const SdeModel& model, const HamiltonianState& s) {
    if (s.phi.size() != model.n || s.psi.size() != model.n)
        throw std::invalid_argument("hamiltonian: state dimension differs from the model");
}

// Right-hand side of the Hamilton equations for the packed state (phi, psi).
void rhs(const SdeModel& model, std::span<const double> y, std::span<double> dy) {
    const std::size_t n = model.n;
    const auto phi = y.subspan(0, n);
    const auto psi = y.subspan(n, n);
    std::vector<double> d(n * n), f(n), jac(n * n), xp(phi.begin(), phi.end()), dp(n * n), dm(n * n);
    model.diffusion_matrix(phi, d);
    model.drift(phi, f);
    model.drift_jacobian_at(phi, jac);
    for (std::size_t i = 0; i < n; ++i) {
        double v = f[i];
        for (std::size_t j = 0; j < n; ++j) v += d[i * n + j] * psi[j];
        dy[i] = v;
    }
    const double fd = 1e-5;
    for (std::size_t l = 0; l < n; ++l) {
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) v -= jac[i * n + l] * psi[i];
        xp[l] = phi[l] + fd;
        model.diffusion_matrix(xp, dp);
        xp[l] = phi[l] - fd;
        model.diffusion_matrix(xp, dm);
        xp[l] = phi[l];
        double q = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) q += psi[i] * (dp[i * n + j] - dm[i * n + j]) * psi[j];
        }
        dy[n + l] = v - 0.5 * q / (2.0 * fd);
    }
}

}  // namespace

double hamiltonian(const SdeModel& model, const HamiltonianState& s) {
    check(model, s);
    const std::size_t n = model.n;
    std::vector<double> d(n * n), f(n);
    model.diffusion_matrix(s.phi, d);
    model.drift(s.phi, f);
    double h = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dpsi = 0.0;
        for (std::size_t j = 0; j < n; ++j) dpsi += d[i * n + j] * s.psi[j];
        h += 0.5 * s.psi[i] * dpsi + s.psi[i] * f[i];
    }
    return h;
}

HamiltonFlow hamilton_flow(const SdeModel& model, const HamiltonianState& start, double T, std::size_t n_steps,
                           double tolerance) {
    check(model, start);
    if (!(T > 0.0) || n_steps == 0) throw std::invalid_argument("hamilton_flow: need T > 0 and n_steps > 0");
    const std::size_t n = model.n, m = 2 * n;
    const double h = T / static_cast<double>(n_steps);
    std::vector<double> y(m), k1(m), k2(m), k3(m), k4(m), tmp(m);
    std::copy(start.phi.begin(), start.phi.end(), y.begin());
    std::copy(start.psi.begin(), start.psi.end(), y.begin() + static_cast<std::ptrdiff_t>(n));

    HamiltonFlow flow;
    const double h0 = hamiltonian(model, start);
    const auto record = [&](double t) {
        HamiltonianState s{{y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n)},
                           {y.begin() + static_cast<std::ptrdiff_t>(n), y.end()}};
        const double drift = std::abs(hamiltonian(model, s) - h0);
        flow.states.push_back(std::move(s));
        flow.times.push_back(t);
        flow.h_drift.push_back(drift);
        flow.max_h_drift = std::max(flow.max_h_drift, drift);
    };
    record(0.0);
    for (std::size_t step = 0; step < n_steps; ++step) {
        rhs(model, y, k1);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        rhs(model, tmp, k2);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        rhs(model, tmp, k3);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + h * k3[i];
        rhs(model, tmp, k4);
        for (std::size_t i = 0; i < m; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        for (double v : y) {
            if (!std::isfinite(v)) throw std::runtime_error("hamilton_flow: state became non-finite");
        }
        record(static_cast<double>(step + 1) * h);
    }
    flow.flagged = flow.max_h_drift > tolerance * (1.0 + std::abs(h0));
    return flow;
}

}  // namespace sdelab
