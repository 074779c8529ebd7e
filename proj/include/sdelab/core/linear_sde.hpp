#pragma once

#include <functional>

#include "sdelab/core/brownian.hpp"
#include "sdelab/core/integrators.hpp"

namespace sdelab {

using TimeFunction = std::function<double(double t)>;

/// dX = a(t) X dt + sigma(t) dW solved by variation of constants:
///   X_t = x0 e^{alpha(t)} + int_0^t e^{alpha(t) - alpha(s)} sigma(s) dW_s,
/// alpha(t) = int_0^t a. Both integrals are left-endpoint sums on the Wiener
/// grid, so the result carries an O(h) quadrature bias for time-dependent
/// coefficients.
SamplePath exact_linear_additive(const TimeFunction& a, const TimeFunction& sigma, double x0,
                                 const WienerPath& wiener);

/// dX = a(t) X dt + sigma(t) X dW:
///   X_t = x0 exp{ int_0^t (a - sigma^2/2) ds + int_0^t sigma dW }.
SamplePath exact_linear_multiplicative(const TimeFunction& a, const TimeFunction& sigma, double x0,
                                       const WienerPath& wiener);

/// X_t = sin(W_t) up to the first time |W| reaches pi/2, then frozen at +-1.
/// Strong solution of dX = -X/2 dt + sqrt(1 - X^2) dW, X_0 = 0.
SamplePath sine_fixture(const WienerPath& wiener);

/// The SDE solved by sine_fixture (diffusion clamped to 0 outside [-1, 1]).
SdeModel sine_fixture_model();

}  // namespace sdelab
