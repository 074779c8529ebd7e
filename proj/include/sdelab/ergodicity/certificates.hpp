#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "sdelab/ergodicity/kernel.hpp"

namespace sdelab {

/// (P V)(x) <= gamma V(x) + d for every state.
struct DriftCertificate {
    double gamma = 0.0;
    double d = 0.0;
    bool feasible = false;
    /// 2 d / (1 - gamma) is below max V, so the small set {V < R} can be a
    /// proper subset of the states.
    bool informative = false;
};

/// Scans gamma over (0, 1) (999 points, then a local refinement) and returns
/// the gamma minimising d(gamma) / (1 - gamma), where d(gamma) is the least d
/// that makes the inequality hold; ties go to the smallest gamma. The
/// certificate is rechecked entrywise before it is marked feasible.
DriftCertificate verify_geometric_drift(const DiscreteKernel& kernel, const Eigen::VectorXd& V);

/// P(x, .) >= alpha nu(.) for x in C = {V < R}.
struct MinorisationCert {
    std::vector<std::size_t> C;
    double alpha = 0.0;
    Eigen::VectorXd nu;
    double R = 0.0;
};

/// nu proportional to the columnwise minimum of the rows in C (the largest
/// admissible nu). Throws if C is empty, if R <= 2 d / (1 - gamma) for a
/// supplied drift certificate, or if alpha = 0.
MinorisationCert verify_minorisation(const DiscreteKernel& kernel, double R, const Eigen::VectorXd& V,
                                     const DriftCertificate* drift = nullptr);

/// Number of states where the drift inequality fails by more than `slack`.
std::size_t count_drift_violations(const DiscreteKernel& kernel, const Eigen::VectorXd& V,
                                   const DriftCertificate& cert, double slack = 0.0);
/// Number of (x, y), x in C, with P(x, y) < alpha nu(y) - slack.
std::size_t count_minorisation_violations(const DiscreteKernel& kernel, const MinorisationCert& cert,
                                          double slack = 0.0);

}  // namespace sdelab
