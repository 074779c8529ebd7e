#include "sdelab/ergodicity/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sdelab/core/stats.hpp"
#include "sdelab/pde/generator.hpp"

namespace sdelab {

const LyapunovCriterion& LyapunovReport::criterion(const std::string& name) const {
    for (const auto& c : criteria) {
        if (c.name == name) return c;
    }
    throw std::out_of_range("LyapunovReport: no criterion " + name);
}

namespace {

constexpr double lowest = -std::numeric_limits<double>::infinity();

// Hull of the nodes where g > 0; false if there are none.
bool positive_hull(const std::vector<double>& x, const std::vector<double>& g, double& lo, double& hi) {
    bool any = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] > 0.0) {
            if (!any) lo = x[i];
            hi = x[i];
            any = true;
        }
    }
    return any;
}

}  // namespace

LyapunovReport mt_lyapunov_report(const SdeModel& model, const std::function<double(double)>& V,
                                  const Grid1D& grid) {
    if (grid.size() < 5) throw std::invalid_argument("mt_lyapunov_report: grid too small");
    const auto all = grid.sample(V);
    for (double v : all) {
        if (!(v >= 0.0)) throw std::invalid_argument("mt_lyapunov_report: V must be nonnegative");
    }
    LyapunovReport r;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        r.x.push_back(grid.node(i));
        r.V.push_back(all[i]);
        r.LV.push_back(apply_generator(model, all, grid, i));
    }
    const std::size_t n = r.x.size();
    const double mid = all[all.size() / 2];
    r.norm_like = all.front() > all[1] && all.back() > all[all.size() - 2] && all.front() > mid && all.back() > mid;
    const auto fit = linear_fit(r.V, r.LV);
    r.fit_slope = fit.slope;
    r.fit_intercept = fit.intercept;
    // Slopes at rounding level (LV constant in V) count as zero.
    const auto [v_lo, v_hi] = std::minmax_element(r.V.begin(), r.V.end());
    double lv_scale = 1.0;
    for (double lv : r.LV) lv_scale = std::max(lv_scale, std::abs(lv));
    const double a = std::abs(fit.slope) * (*v_hi - *v_lo) <= 1e-9 * lv_scale ? 0.0 : fit.slope;
    const double x_first = r.x.front(), x_last = r.x.back();
    const auto interior = [&](double lo, double hi) { return lo > x_first && hi < x_last; };

    {
        LyapunovCriterion c{"non_explosion", "LV <= c V + d"};
        c.c = std::max(a, 0.0);
        c.d = lowest;
        for (std::size_t i = 0; i < n; ++i) c.d = std::max(c.d, r.LV[i] - c.c * r.V[i]);
        c.d = std::max(c.d, 0.0);
        c.max_violation = lowest;
        for (std::size_t i = 0; i < n; ++i) c.max_violation = std::max(c.max_violation, r.LV[i] - c.c * r.V[i] - c.d);
        c.feasible = c.max_violation <= 0.0;
        r.criteria.push_back(c);
    }
    {
        LyapunovCriterion c{"non_evanescence", "LV <= d 1_C"};
        c.has_set = true;
        const bool any = positive_hull(r.x, r.LV, c.c_lo, c.c_hi);
        c.d = std::max(0.0, *std::max_element(r.LV.begin(), r.LV.end()));
        c.max_violation = lowest;
        for (std::size_t i = 0; i < n; ++i) {
            const bool in_c = any && r.x[i] >= c.c_lo && r.x[i] <= c.c_hi;
            c.max_violation = std::max(c.max_violation, r.LV[i] - (in_c ? c.d : 0.0));
        }
        c.feasible = !any || interior(c.c_lo, c.c_hi);
        r.criteria.push_back(c);
    }
    {
        LyapunovCriterion c{"positive_recurrence", "LV <= -c f + d 1_C, f = 1 + V"};
        c.has_set = true;
        c.c = a < 0.0 ? -0.5 * a : 0.0;
        std::vector<double> g(n);
        for (std::size_t i = 0; i < n; ++i) g[i] = r.LV[i] + c.c * (1.0 + r.V[i]);
        const bool any = positive_hull(r.x, g, c.c_lo, c.c_hi);
        c.d = std::max(0.0, *std::max_element(g.begin(), g.end()));
        c.max_violation = lowest;
        for (std::size_t i = 0; i < n; ++i) {
            const bool in_c = any && r.x[i] >= c.c_lo && r.x[i] <= c.c_hi;
            c.max_violation = std::max(c.max_violation, g[i] - (in_c ? c.d : 0.0));
        }
        c.feasible = c.c > 0.0 && (!any || interior(c.c_lo, c.c_hi));
        r.criteria.push_back(c);
    }
    {
        LyapunovCriterion c{"exponential_ergodicity", "LV <= -c V + d"};
        c.c = -a;
        c.d = lowest;
        for (std::size_t i = 0; i < n; ++i) c.d = std::max(c.d, r.LV[i] + c.c * r.V[i]);
        c.max_violation = lowest;
        for (std::size_t i = 0; i < n; ++i) c.max_violation = std::max(c.max_violation, r.LV[i] + c.c * r.V[i] - c.d);
        c.feasible = c.c > 0.0 && c.max_violation <= 0.0;
        r.criteria.push_back(c);
    }
    return r;
}

}  // namespace sdelab
