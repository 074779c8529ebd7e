#pragma once

#include <vector>

#include "sdelab/core/sde_model.hpp"

namespace sdelab {

struct HamiltonianState {
    std::vector<double> phi;
    std::vector<double> psi;
};

/// H(phi, psi) = (1/2) <psi, D(phi) psi> + <psi, f(phi)>.
double hamiltonian(const SdeModel& model, const HamiltonianState& state);

struct HamiltonFlow {
    std::vector<HamiltonianState> states;
    std::vector<double> times;
    /// |H(t_k) - H(0)| per node.
    std::vector<double> h_drift;
    double max_h_drift = 0.0;
    /// max_h_drift exceeded tolerance * (1 + |H(0)|).
    bool flagged = false;
};

/// Classical RK4 for phi' = D psi + f and
/// psi' = -(1/2) grad_phi <psi, D psi> - (df/dphi)^T psi,
/// with central differences (step 1e-5) for the derivatives of D.
HamiltonFlow hamilton_flow(const SdeModel& model, const HamiltonianState& start, double T, std::size_t n_steps,
                           double tolerance = 1e-6);

}  // namespace sdelab
