#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdelab/core/brownian.hpp"
#include "sdelab/core/random.hpp"
#include "sdelab/core/sde_model.hpp"

namespace sdelab {

/// Solution path of an SDE on a time grid, values stored node-major.
struct SamplePath {
    TimeGrid grid;
    std::size_t dim = 1;
    std::vector<double> values;
    std::optional<WienerPath> wiener;

    std::span<const double> at(std::size_t k) const { return {values.data() + k * dim, dim}; }
    double at(std::size_t k, std::size_t i) const { return values[k * dim + i]; }
    double operator[](std::size_t k) const { return values[k * dim]; }
};

/// Raised when an integrator produces a non-finite state.
class BlowUpError : public std::runtime_error {
public:
    explicit BlowUpError(std::size_t step, const std::string& context = "");
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

/// In-place Euler-Maruyama stepper with preallocated work buffers.
/// One instance per thread.
class EulerStepper {
public:
    explicit EulerStepper(const SdeModel& model);

    /// x <- x + f(x) h + g(x) dw, with dw of length k.
    void step(std::span<double> x, double h, std::span<const double> dw);
    /// Same, drawing dw ~ N(0, h I) from the stream into the internal buffer.
    template <NormalSource Source>
    void step(std::span<double> x, double h, Source& noise) {
        const double sd = std::sqrt(h);
        for (double& v : dw_) v = sd * noise.normal();
        step(x, h, dw_);
    }
    std::span<const double> last_increment() const { return dw_; }

private:
    const SdeModel& model_;
    std::vector<double> f_, g_, dw_;
};

/// X_{k+1} = X_k + f(X_k) h + g(X_k) dW_k, noise drawn from the stream.
/// The underlying Wiener path is kept on the result.
SamplePath euler_maruyama(const SdeModel& model, std::span<const double> x0, const TimeGrid& grid,
                          GaussianStream& stream);

/// Same scheme driven by a given Wiener path (shared-noise comparisons).
SamplePath euler_maruyama(const SdeModel& model, std::span<const double> x0, const WienerPath& wiener);

/// Explicit Euler for x' = f(x); equals euler_maruyama with g = 0.
SamplePath explicit_euler(const SdeModel& model, std::span<const double> x0, const TimeGrid& grid);

bool all_finite(std::span<const double> x);

}  // namespace sdelab
