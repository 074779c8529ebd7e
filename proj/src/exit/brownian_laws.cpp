#include "sdelab/exit/brownian_laws.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sdelab/core/stats.hpp"
#include "sdelab/exit/exit_mc.hpp"

namespace sdelab {

double arcsine_cdf(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return 2.0 / std::numbers::pi * std::asin(std::sqrt(u));
}

OccupationSample arcsine_occupation(std::size_t n_paths, const TimeGrid& grid, const GaussianStream& stream,
                                    Execution exec) {
    if (n_paths == 0 || grid.n_steps() == 0) throw std::invalid_argument("arcsine_occupation: empty sample");
    OccupationSample out;
    out.fractions.resize(n_paths);
    const std::size_t n = grid.n_steps();
    for_each_index(n_paths, exec, [&](std::size_t p) {
        GaussianStream noise = stream.substream(p);
        const double sd = std::sqrt(grid.step());
        double w = 0.0, sum = 0.0;
        double prev = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            w += sd * noise.normal();
            const double ind = w > 0.0 ? 1.0 : 0.0;
            sum += 0.5 * (prev + ind);
            prev = ind;
        }
        out.fractions[p] = sum / static_cast<double>(n);
    });
    out.ks_statistic = ks_statistic(out.fractions, arcsine_cdf);
    return out;
}

double line_hitting_cdf(double t) {
    if (t <= 0.0) return 0.0;
    return 2.0 * (1.0 - normal_cdf(1.0 / std::sqrt(t)));
}

double line_hitting_median() {
    const double z = normal_quantile(0.75);
    return 1.0 / (z * z);
}

double cauchy_cdf(double x) { return 0.5 + std::atan(x) / std::numbers::pi; }

LineHitting line_hitting_2d(std::size_t n_paths, double h, const GaussianStream& stream,
                            const LineHittingOptions& opts) {
    ExitOptions eo;
    eo.h = h;
    eo.n_paths = n_paths;
    eo.t_max = opts.t_max;
    eo.h_max = opts.h_max;
    eo.distance_scale = opts.distance_scale;
    eo.keep_samples = true;
    eo.exec = opts.exec;
    const double origin[2] = {0.0, 0.0};
    const auto stats = mc_exit(SdeModel::brownian(2), origin, Domain::half_space(1.0, 0, Domain::Side::below), eo,
                               stream);
    LineHitting out;
    out.n_paths = n_paths;
    out.fraction_censored = stats.fraction_censored;
    for (const auto& s : stats.samples) {
        if (s.censored) continue;
        out.tau.push_back(s.time);
        out.w2.push_back(s.location[1]);
    }
    return out;
}

}  // namespace sdelab
