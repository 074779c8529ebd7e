#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sdelab {

/// Vector field R^n -> R^m written into a caller-provided buffer.
using VectorField = std::function<void(std::span<const double> x, std::span<double> out)>;

/// Potential U: R^n -> R with its gradient (and optionally its Hessian,
/// row-major n x n). Missing Hessians are approximated by central
/// differences of the gradient.
struct Potential {
    std::function<double(std::span<const double>)> value;
    VectorField gradient;
    VectorField hessian;

    double operator()(std::span<const double> x) const { return value(x); }
    double operator()(double x) const { return value(std::span<const double>(&x, 1)); }
    std::vector<double> hessian_at(std::span<const double> x) const;

    /// One-dimensional potential from scalar callables.
    static Potential scalar(std::function<double(double)> u, std::function<double(double)> du,
                            std::function<double(double)> d2u = {});
    /// U(x) = x^4/4 - x^2/2.
    static Potential double_well();
    /// U(x) = |x|^2 / 2 in R^n.
    static Potential quadratic(std::size_t n = 1);
};

/// dX = f(X) dt + g(X) dW with X in R^n and W in R^k.
///
/// diffusion writes g(x) row-major (n x k). The optional drift_jacobian
/// writes df/dx row-major (n x n); when absent, finite differences are used.
struct SdeModel {
    std::size_t n = 1;
    std::size_t k = 1;
    VectorField drift;
    VectorField diffusion;
    VectorField drift_jacobian;
    std::optional<Potential> potential;
    bool gradient_form = false;
    std::string name;

    /// D = g g^T, row-major n x n.
    void diffusion_matrix(std::span<const double> x, std::span<double> out) const;
    void drift_jacobian_at(std::span<const double> x, std::span<double> out,
                           double fd_step = 1e-5) const;

    /// Scalar conveniences (n = k = 1).
    double drift_at(double x) const;
    double noise_at(double x) const;
    double diffusion_coefficient(double x) const;  // g(x)^2

    static SdeModel brownian(std::size_t dim = 1);
    /// dX = -theta X dt + sigma dW.
    static SdeModel ornstein_uhlenbeck(double theta = 1.0, double sigma = 1.0);
    /// dX = r X dt + X dW.
    static SdeModel geometric_brownian(double r = 0.0);
    /// dX = -grad U dt + sqrt(2) dW; invariant density proportional to e^{-U}.
    static SdeModel gradient(Potential u, std::size_t n = 1);
    /// dX = -grad U dt + sigma dW with a scalar noise amplitude.
    static SdeModel gradient_with_noise(Potential u, double sigma, std::size_t n = 1);
    /// Scalar model from callables.
    static SdeModel scalar(std::function<double(double)> f, std::function<double(double)> g,
                           std::string name = "scalar");
};

}  // namespace sdelab
