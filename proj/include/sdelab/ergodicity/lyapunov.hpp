#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sdelab/core/sde_model.hpp"
#include "sdelab/pde/grid.hpp"

namespace sdelab {

/// Best constants for one Lyapunov criterion on the grid interior. For the
/// criteria with a compact set, C is the node hull [c_lo, c_hi] and the
/// criterion counts as feasible only if C stays away from the grid ends.
struct LyapunovCriterion {
    std::string name;
    std::string inequality;
    double c = 0.0;
    double d = 0.0;
    bool has_set = false;
    double c_lo = 0.0, c_hi = 0.0;
    bool feasible = false;
    /// Largest violation of the inequality over the nodes (<= 0 when it holds).
    double max_violation = 0.0;
};

struct LyapunovReport {
    std::vector<double> x;
    std::vector<double> V;
    std::vector<double> LV;
    /// V grows toward both grid ends.
    bool norm_like = false;
    /// Fit LV ~ a V + b used to pick the constants.
    double fit_slope = 0.0;
    double fit_intercept = 0.0;
    /// non_explosion: LV <= cV + d; non_evanescence: LV <= d 1_C;
    /// positive_recurrence: LV <= -c f + d 1_C with f = 1 + V;
    /// exponential_ergodicity: LV <= -cV + d.
    std::vector<LyapunovCriterion> criteria;
    /// Petite / compactness hypotheses are not checked.
    std::string topological_conditions = "assumed";

    const LyapunovCriterion& criterion(const std::string& name) const;
};

/// Evaluates LV at the interior nodes with central differences and fits the
/// constants of each criterion.
LyapunovReport mt_lyapunov_report(const SdeModel& model, const std::function<double(double)>& V,
                                  const Grid1D& grid);

}  // namespace sdelab
