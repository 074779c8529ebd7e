#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "sdelab/core/random.hpp"

namespace sdelab {

/// s(x) m(y) <= p(x, y) <= L s(x) m(y) for all x, y.
struct ConeBounds {
    Eigen::VectorXd s;
    Eigen::VectorXd m;
    double L = 1.0;
};

/// s = row sums, m(y) = min_x p(x, y) / s(x), L = max p / (s m). Throws if
/// the matrix has a nonpositive entry.
ConeBounds fit_cone_bounds(const Eigen::MatrixXd& p);
/// Entries violating either side of the cone bound.
std::size_t count_cone_violations(const Eigen::MatrixXd& p, const ConeBounds& bounds);

/// Hilbert projective distance |log(min f/g * min g/f)|; +infinity unless
/// both vectors are entrywise positive.
double hilbert_metric(const Eigen::VectorXd& f, const Eigen::VectorXd& g);

struct DiameterEstimate {
    double delta = 0.0;
    std::size_t probes = 0;
};

/// Diameter of the image of the positive cone under f -> p f: maximum
/// distance over all column pairs (the extreme rays of the image) and over
/// n_probe random positive vectors pushed through p.
DiameterEstimate projective_diameter(const Eigen::MatrixXd& p, std::size_t n_probe, const GaussianStream& stream);

/// max theta(p f, p g) / theta(f, g) over n_pairs log-uniform positive pairs.
double projective_contraction_ratio(const Eigen::MatrixXd& p, std::size_t n_pairs, const GaussianStream& stream);

struct JentzschResult {
    double lambda0 = 0.0;
    /// Right Perron vector, sup norm 1.
    Eigen::VectorXd h0;
    /// Left Perron vector, mass 1 (the quasistationary law when p leaks).
    Eigen::VectorXd pi0;
    /// Geometric rate of theta(p^{n+1} f, p^n f).
    double observed_rate = 0.0;
    std::size_t iterations = 0;
    double right_residual = 0.0;
    double left_residual = 0.0;
    /// 1 - 1/L^2 from the cone bounds.
    double rate_bound = 1.0;
};

/// Power iteration for both Perron vectors from a fixed generic start.
/// lambda0 = <pi0, p h0> / <pi0, h0>; iteration stops once
/// |p h0 - lambda0 h0|_inf <= tol |h0|_inf and the same holds on the left.
/// Throws std::runtime_error if max_iter is reached first.
JentzschResult power_iteration_jentzsch(const Eigen::MatrixXd& p, double tol = 1e-10, std::size_t max_iter = 100000);

}  // namespace sdelab
