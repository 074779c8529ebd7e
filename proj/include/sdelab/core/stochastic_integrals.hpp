#pragma once

#include <cstddef>
#include <functional>

#include "sdelab/core/brownian.hpp"
#include "sdelab/core/integrators.hpp"

namespace sdelab {

/// Integrand evaluated at grid node k.
using NodeFunction = std::function<double(std::size_t k)>;

/// Left-point sum  sum_k e(t_{k-1}) (W_{t_k} - W_{t_{k-1}})  on the Wiener
/// path's own grid. Scalar Wiener paths only.
double ito_integral(const NodeFunction& integrand, const WienerPath& wiener);
/// Integrand given as a path; its grid must equal the Wiener grid.
double ito_integral(const SamplePath& integrand, const WienerPath& wiener);

/// Trapezoidal sum  sum_k (e(t_k) + e(t_{k-1}))/2 (W_{t_k} - W_{t_{k-1}}).
double stratonovich_integral(const NodeFunction& integrand, const WienerPath& wiener);
double stratonovich_integral(const SamplePath& integrand, const WienerPath& wiener);

}  // namespace sdelab
