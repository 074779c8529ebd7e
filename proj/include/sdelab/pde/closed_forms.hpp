#pragma once

namespace sdelab {

/// Brownian transition density e^{-x^2/2t} / sqrt(2 pi t).
double heat_kernel(double t, double x);

/// Density of BM started at 0 and reflected at level H > 0 (x <= H).
double reflected_bm_density(double t, double x, double H);
/// Density of BM started at 0 and killed at level H > 0 (x <= H).
double killed_bm_density(double t, double x, double H);

/// Variance of the OU process dX = -X dt + dW started from a point.
double ou_variance(double t);

}  // namespace sdelab
