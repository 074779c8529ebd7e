#include "sdelab/pde/semigroup_mc.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sdelab/core/integrators.hpp"

namespace sdelab {

Estimate mc_feynman_kac(const SdeModel& model, const std::function<double(double)>& q,
                        const std::function<double(double)>& phi, double t, double x,
                        const SemigroupOptions& opts, const GaussianStream& stream) {
    if (model.n != 1 || model.k != 1) throw std::invalid_argument("mc_feynman_kac: scalar model required");
    if (!(t > 0.0) || opts.n_steps == 0 || opts.n_paths == 0)
        throw std::invalid_argument("mc_feynman_kac: need t > 0, n_steps > 0, n_paths > 0");
    const double h = t / static_cast<double>(opts.n_steps);
    std::vector<double> samples(opts.n_paths);
    for_each_index(opts.n_paths, opts.exec, [&](std::size_t p) {
        GaussianStream noise = stream.substream(p);
        EulerStepper stepper(model);
        double state = x;
        std::span<double> xs(&state, 1);
        double exponent = 0.0;
        for (std::size_t s = 0; s < opts.n_steps; ++s) {
            if (q) exponent += q(state) * h;
            stepper.step(xs, h, noise);
            if (!std::isfinite(state)) throw BlowUpError(s + 1, "mc_feynman_kac path " + std::to_string(p));
        }
        samples[p] = std::exp(-exponent) * phi(state);
    });
    return mean_estimate(samples);
}

Estimate mc_semigroup(const SdeModel& model, const std::function<double(double)>& phi, double x, double t,
                      const SemigroupOptions& opts, const GaussianStream& stream) {
    return mc_feynman_kac(model, {}, phi, t, x, opts, stream);
}

}  // namespace sdelab
