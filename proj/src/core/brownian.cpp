#include "sdelab/core/brownian.hpp"

namespace sdelab {

TimeGrid::TimeGrid(double t0, double t_end, std::size_t n_steps)
    : t0_(t0), t_end_(t_end), n_steps_(n_steps) {
    if (!(t_end > t0)) throw std::invalid_argument("TimeGrid: t_end must exceed t0");
}

double TimeGrid::node(std::size_t k) const {
    if (n_steps_ == 0) return t0_;
    if (k == n_steps_) return t_end_;
    return t0_ + static_cast<double>(k) * step();
}

TimeGrid TimeGrid::refined(std::size_t factor) const {
    if (factor == 0) throw std::invalid_argument("TimeGrid::refined: factor must be positive");
    return TimeGrid(t0_, t_end_, n_steps_ * factor);
}

WienerPath sample_wiener(const TimeGrid& grid, std::size_t dim, GaussianStream& stream) {
    if (dim == 0) throw std::invalid_argument("sample_wiener: dim must be >= 1");
    WienerPath path{grid, dim, std::vector<double>(grid.size() * dim, 0.0)};
    const double sd = std::sqrt(grid.step());
    for (std::size_t k = 0; k < grid.n_steps(); ++k) {
        for (std::size_t i = 0; i < dim; ++i)
            path.values[(k + 1) * dim + i] = path.values[k * dim + i] + sd * stream.normal();
    }
    return path;
}

WienerPath rescale_wiener(const WienerPath& path, double c) {
    if (c == 0.0) throw std::invalid_argument("rescale_wiener: c must be nonzero");
    const double c2 = c * c;
    WienerPath out{TimeGrid(c2 * path.grid.t0(), c2 * path.grid.t_end(), path.grid.n_steps()), path.dim,
                   path.values};
    for (double& v : out.values) v *= c;
    return out;
}

}  // namespace sdelab
