#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "sdelab/core/random.hpp"

namespace sdelab {

/// Uniform time grid t0 < t1 < ... < t_N with N = n_steps.
///
/// n_steps = 0 is accepted and describes the single node t0.
class TimeGrid {
public:
    TimeGrid(double t0, double t_end, std::size_t n_steps);

    double t0() const { return t0_; }
    double t_end() const { return t_end_; }
    std::size_t n_steps() const { return n_steps_; }
    std::size_t size() const { return n_steps_ + 1; }
    double step() const { return n_steps_ == 0 ? 0.0 : (t_end_ - t0_) / static_cast<double>(n_steps_); }
    double node(std::size_t k) const;

    /// Same interval with n_steps multiplied by factor.
    TimeGrid refined(std::size_t factor = 2) const;

    bool operator==(const TimeGrid&) const = default;

private:
    double t0_;
    double t_end_;
    std::size_t n_steps_;
};

/// Brownian path in R^dim on a time grid, values stored node-major.
struct WienerPath {
    TimeGrid grid;
    std::size_t dim = 1;
    std::vector<double> values;

    std::span<const double> at(std::size_t k) const { return {values.data() + k * dim, dim}; }
    double at(std::size_t k, std::size_t i) const { return values[k * dim + i]; }
    double increment(std::size_t k, std::size_t i = 0) const { return at(k + 1, i) - at(k, i); }
    /// Scalar paths only.
    double operator[](std::size_t k) const { return values[k * dim]; }
};

WienerPath sample_wiener(const TimeGrid& grid, std::size_t dim, GaussianStream& stream);

/// Lévy midpoint refinement: each level inserts midpoints
///   W(t_mid) = (W(t_left) + W(t_right)) / 2 + sqrt(h/4) * xi
/// where h is the current step, so the returned path agrees with the input at
/// the original nodes and has n_steps * 2^levels steps.
template <NormalSource Source>
WienerPath refine_wiener_midpoint(const WienerPath& path, int levels, Source& noise) {
    if (levels < 0) throw std::invalid_argument("refine_wiener_midpoint: levels must be >= 0");
    WienerPath current = path;
    for (int level = 0; level < levels; ++level) {
        const std::size_t n = current.grid.n_steps();
        const double half_sd = std::sqrt(current.grid.step() / 4.0);
        WienerPath next{current.grid.refined(2), current.dim, {}};
        next.values.resize(next.grid.size() * current.dim);
        for (std::size_t k = 0; k <= n; ++k) {
            for (std::size_t i = 0; i < current.dim; ++i)
                next.values[(2 * k) * current.dim + i] = current.at(k, i);
        }
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < current.dim; ++i) {
                const double mid = 0.5 * (current.at(k, i) + current.at(k + 1, i));
                next.values[(2 * k + 1) * current.dim + i] = mid + half_sd * noise.normal();
            }
        }
        current = std::move(next);
    }
    return current;
}

/// Brownian scaling c * W(t / c^2), returned on the grid [c^2 t0, c^2 t_end].
WienerPath rescale_wiener(const WienerPath& path, double c);

}  // namespace sdelab
