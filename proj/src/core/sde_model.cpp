#include "sdelab/core/sde_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sdelab {

std::vector<double> Potential::hessian_at(std::span<const double> x) const {
    const std::size_t n = x.size();
    std::vector<double> h(n * n, 0.0);
    if (hessian) {
        hessian(x, h);
        return h;
    }
    const double eps = 1e-5;
    std::vector<double> xp(x.begin(), x.end()), gp(n), gm(n);
    for (std::size_t j = 0; j < n; ++j) {
        xp[j] = x[j] + eps;
        gradient(xp, gp);
        xp[j] = x[j] - eps;
        gradient(xp, gm);
        xp[j] = x[j];
        for (std::size_t i = 0; i < n; ++i) h[i * n + j] = (gp[i] - gm[i]) / (2.0 * eps);
    }
    // symmetrize
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) h[i * n + j] = h[j * n + i] = 0.5 * (h[i * n + j] + h[j * n + i]);
    return h;
}

Potential Potential::scalar(std::function<double(double)> u, std::function<double(double)> du,
                            std::function<double(double)> d2u) {
    Potential p;
    p.value = [u](std::span<const double> x) { return u(x[0]); };
    p.gradient = [du](std::span<const double> x, std::span<double> out) { out[0] = du(x[0]); };
    if (d2u) p.hessian = [d2u](std::span<const double> x, std::span<double> out) { out[0] = d2u(x[0]); };
    return p;
}

Potential Potential::double_well() {
    return scalar([](double x) { return 0.25 * x * x * x * x - 0.5 * x * x; },
                  [](double x) { return x * x * x - x; }, [](double x) { return 3.0 * x * x - 1.0; });
}

Potential Potential::quadratic(std::size_t n) {
    Potential p;
    p.value = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return 0.5 * s;
    };
    p.gradient = [](std::span<const double> x, std::span<double> out) {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
    };
    p.hessian = [n](std::span<const double>, std::span<double> out) {
        for (std::size_t i = 0; i < n * n; ++i) out[i] = (i % (n + 1) == 0) ? 1.0 : 0.0;
    };
    return p;
}

void SdeModel::diffusion_matrix(std::span<const double> x, std::span<double> out) const {
    std::vector<double> g(n * k);
    diffusion(x, g);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < k; ++l) s += g[i * k + l] * g[j * k + l];
            out[i * n + j] = s;
        }
}

void SdeModel::drift_jacobian_at(std::span<const double> x, std::span<double> out, double fd_step) const {
    if (drift_jacobian) {
        drift_jacobian(x, out);
        return;
    }
    std::vector<double> xp(x.begin(), x.end()), fp(n), fm(n);
    for (std::size_t j = 0; j < n; ++j) {
        xp[j] = x[j] + fd_step;
        drift(xp, fp);
        xp[j] = x[j] - fd_step;
        drift(xp, fm);
        xp[j] = x[j];
        for (std::size_t i = 0; i < n; ++i) out[i * n + j] = (fp[i] - fm[i]) / (2.0 * fd_step);
    }
}

double SdeModel::drift_at(double x) const {
    double out = 0.0;
    drift(std::span<const double>(&x, 1), std::span<double>(&out, 1));
    return out;
}

double SdeModel::noise_at(double x) const {
    double out = 0.0;
    diffusion(std::span<const double>(&x, 1), std::span<double>(&out, 1));
    return out;
}

double SdeModel::diffusion_coefficient(double x) const {
    const double g = noise_at(x);
    return g * g;
}

SdeModel SdeModel::brownian(std::size_t dim) {
    SdeModel m;
    m.n = m.k = dim;
    m.name = "bm";
    m.drift = [](std::span<const double>, std::span<double> out) {
        for (double& v : out) v = 0.0;
    };
    m.diffusion = [dim](std::span<const double>, std::span<double> out) {
        for (std::size_t i = 0; i < dim * dim; ++i) out[i] = (i % (dim + 1) == 0) ? 1.0 : 0.0;
    };
    m.drift_jacobian = [](std::span<const double>, std::span<double> out) {
        for (double& v : out) v = 0.0;
    };
    return m;
}

SdeModel SdeModel::ornstein_uhlenbeck(double theta, double sigma) {
    SdeModel m;
    m.name = "ou";
    m.drift = [theta](std::span<const double> x, std::span<double> out) { out[0] = -theta * x[0]; };
    m.diffusion = [sigma](std::span<const double>, std::span<double> out) { out[0] = sigma; };
    m.drift_jacobian = [theta](std::span<const double>, std::span<double> out) { out[0] = -theta; };
    return m;
}

SdeModel SdeModel::geometric_brownian(double r) {
    SdeModel m;
    m.name = "gbm";
    m.drift = [r](std::span<const double> x, std::span<double> out) { out[0] = r * x[0]; };
    m.diffusion = [](std::span<const double> x, std::span<double> out) { out[0] = x[0]; };
    m.drift_jacobian = [r](std::span<const double>, std::span<double> out) { out[0] = r; };
    return m;
}

SdeModel SdeModel::gradient_with_noise(Potential u, double sigma, std::size_t n) {
    SdeModel m;
    m.n = m.k = n;
    m.name = "gradient";
    auto grad = u.gradient;
    m.drift = [grad](std::span<const double> x, std::span<double> out) {
        grad(x, out);
        for (double& v : out) v = -v;
    };
    m.diffusion = [sigma, n](std::span<const double>, std::span<double> out) {
        for (std::size_t i = 0; i < n * n; ++i) out[i] = (i % (n + 1) == 0) ? sigma : 0.0;
    };
    if (u.hessian) {
        auto hess = u.hessian;
        m.drift_jacobian = [hess](std::span<const double> x, std::span<double> out) {
            hess(x, out);
            for (double& v : out) v = -v;
        };
    }
    m.potential = std::move(u);
    return m;
}

SdeModel SdeModel::gradient(Potential u, std::size_t n) {
    SdeModel m = gradient_with_noise(std::move(u), std::numbers::sqrt2, n);
    m.gradient_form = true;
    return m;
}

SdeModel SdeModel::scalar(std::function<double(double)> f, std::function<double(double)> g, std::string name) {
    SdeModel m;
    m.name = std::move(name);
    m.drift = [f](std::span<const double> x, std::span<double> out) { out[0] = f(x[0]); };
    m.diffusion = [g](std::span<const double> x, std::span<double> out) { out[0] = g(x[0]); };
    return m;
}

}  // namespace sdelab
