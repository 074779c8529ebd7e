#pragma once

#include <cstddef>
#include <functional>

#include "sdelab/core/parallel.hpp"
#include "sdelab/core/random.hpp"
#include "sdelab/core/sde_model.hpp"
#include "sdelab/core/stats.hpp"

namespace sdelab {

struct SemigroupOptions {
    std::size_t n_paths = 10000;
    std::size_t n_steps = 1000;
    Execution exec = Execution::openmp;
};

/// P_t phi(x) = E^x[phi(X_t)] from Euler-Maruyama paths; path p uses
/// stream.substream(p). Scalar models.
Estimate mc_semigroup(const SdeModel& model, const std::function<double(double)>& phi, double x, double t,
                      const SemigroupOptions& opts, const GaussianStream& stream);

/// E^x[exp(-int_0^t q(X_s) ds) phi(X_t)], exponent by left-endpoint sums.
Estimate mc_feynman_kac(const SdeModel& model, const std::function<double(double)>& q,
                        const std::function<double(double)>& phi, double t, double x,
                        const SemigroupOptions& opts, const GaussianStream& stream);

}  // namespace sdelab
