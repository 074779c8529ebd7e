#include "sdelab/core/stochastic_integrals.hpp"

#include <stdexcept>

namespace sdelab {

namespace {

void require_scalar(const WienerPath& w) {
    if (w.dim != 1) throw std::invalid_argument("stochastic integral: scalar Wiener path required");
}

void require_same_grid(const SamplePath& e, const WienerPath& w) {
    if (!(e.grid == w.grid) || e.dim != 1)
        throw std::invalid_argument("stochastic integral: integrand grid does not match Wiener grid");
}

}  // namespace

double ito_integral(const NodeFunction& integrand, const WienerPath& wiener) {
    require_scalar(wiener);
    double sum = 0.0;
    for (std::size_t k = 0; k < wiener.grid.n_steps(); ++k) sum += integrand(k) * wiener.increment(k);
    return sum;
}

double ito_integral(const SamplePath& integrand, const WienerPath& wiener) {
    require_same_grid(integrand, wiener);
    return ito_integral([&](std::size_t k) { return integrand[k]; }, wiener);
}

double stratonovich_integral(const NodeFunction& integrand, const WienerPath& wiener) {
    require_scalar(wiener);
    double sum = 0.0;
    for (std::size_t k = 0; k < wiener.grid.n_steps(); ++k)
        sum += 0.5 * (integrand(k) + integrand(k + 1)) * wiener.increment(k);
    return sum;
}

double stratonovich_integral(const SamplePath& integrand, const WienerPath& wiener) {
    require_same_grid(integrand, wiener);
    return stratonovich_integral([&](std::size_t k) { return integrand[k]; }, wiener);
}

}  // namespace sdelab
