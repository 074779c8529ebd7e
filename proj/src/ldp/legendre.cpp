#include "sdelab/ldp/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

namespace sdelab {

double LegendrePair::operator()(double v) const {
    if (x.empty()) throw std::logic_error("LegendrePair: empty table");
    if (v <= x.front()) return Lambda_star.front();
    if (v >= x.back()) return Lambda_star.back();
    const auto it = std::upper_bound(x.begin(), x.end(), v);
    const std::size_t j = static_cast<std::size_t>(it - x.begin());
    const double w = (v - x[j - 1]) / (x[j] - x[j - 1]);
    return (1.0 - w) * Lambda_star[j - 1] + w * Lambda_star[j];
}

bool LegendrePair::convex(double tol) const {
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        const double w = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
        if (Lambda_star[i] > (1.0 - w) * Lambda_star[i - 1] + w * Lambda_star[i + 1] + tol) return false;
    }
    return true;
}

LegendrePair legendre_transform(std::function<double(double)> Lambda, const std::vector<double>& x_grid,
                                const std::vector<double>& t_grid) {
    if (t_grid.size() < 2) throw std::invalid_argument("legendre_transform: t_grid needs two points");
    if (!std::is_sorted(t_grid.begin(), t_grid.end()) || !std::is_sorted(x_grid.begin(), x_grid.end()))
        throw std::invalid_argument("legendre_transform: grids must be increasing");
    std::vector<double> lam(t_grid.size());
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
        lam[j] = Lambda(t_grid[j]);
        if (!std::isfinite(lam[j])) throw std::invalid_argument("legendre_transform: Lambda not finite on t_grid");
    }
    LegendrePair out;
    out.Lambda = Lambda;
    out.x = x_grid;
    for (double xv : x_grid) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < t_grid.size(); ++j) {
            if (t_grid[j] * xv - lam[j] > t_grid[best] * xv - lam[best]) best = j;
        }
        const double lo = t_grid[best == 0 ? 0 : best - 1];
        const double hi = t_grid[std::min(best + 1, t_grid.size() - 1)];
        const auto neg = [&](double t) { return Lambda(t) - t * xv; };
        const auto [t, v] = boost::math::tools::brent_find_minima(neg, lo, hi, 52);
        double value = -v, arg = t;
        if (t_grid[best] * xv - lam[best] > value) {
            value = t_grid[best] * xv - lam[best];
            arg = t_grid[best];
        }
        out.Lambda_star.push_back(value);
        out.t_star.push_back(arg);
    }
    return out;
}

double coin_rate(double delta) {
    if (!(std::abs(delta) < 0.5)) throw std::invalid_argument("coin_rate: need |delta| < 1/2");
    return (0.5 + delta) * std::log1p(2.0 * delta) + (0.5 - delta) * std::log1p(-2.0 * delta);
}

}  // namespace sdelab
