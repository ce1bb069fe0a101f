// energy.hpp
// The ternary free energy, its three-part breakdown, and the variational
// derivatives that drive every time stepper.

#ifndef ACON_ENERGY_HPP
#define ACON_ENERGY_HPP

#include <array>

#include "acon/chemistry.hpp"
#include "acon/grid.hpp"

namespace acon {

/// Three-part energy breakdown. Each part is nonnegative for a positive
/// definite interaction matrix, and total is their sum.
struct EnergyBreakdown {
    double interfacial = 0.0; ///< (eps/2) int (|grad p1|^2 + |grad p2|^2 + grad p1 . grad p2)
    double potential = 0.0;   ///< (1/2eps) int W_T(p1, p2)
    double longrange = 0.0;   ///< sum_ij (gamma_ij/2) int grad Psi_i . grad Psi_j
    double total = 0.0;
};

/// The pair of phase fields plus the model parameters they evolve under.
/// The third species is implicit as 1 - phi1 - phi2.
struct PhaseState {
    ScalarField phi1;
    ScalarField phi2;
    ModelParams params;

    PhaseState(ScalarField p1, ScalarField p2, ModelParams mp)
        : phi1(std::move(p1)), phi2(std::move(p2)), params(mp) {
        if (!phi1.grid().same_layout(phi2.grid()))
            throw ConfigError("PhaseState: phase fields live on different grids");
    }

    const PeriodicGrid& grid() const { return phi1.grid(); }
    const ScalarField& phase(int i) const { return i == 0 ? phi1 : phi2; }
    ScalarField& phase(int i) { return i == 0 ? phi1 : phi2; }
};

/// Evaluate the free energy. The long-range part is computed through
/// int (f(phi_i) - omega_i) Psi_j with Psi_j the zero-mean inverse-Laplacian
/// potential of (f(phi_j) - omega_j); the zero-mean convention makes the
/// value identical whether or not the state satisfies the constraints.
EnergyBreakdown energy(const PhaseState& state);

/// dE/dphi_i as a field:
///   -eps Lap phi_i - (eps/2) Lap phi_j
///   + (1/2eps) (W'(phi_i) - W'(1 - phi1 - phi2))
///   + f'(phi_i) sum_k gamma_ik Psi_k.
/// This is the exact gradient of the discrete energy, so it matches central
/// finite differences of energy() to truncation order.
ScalarField variational_derivative(const PhaseState& state, int i);

/// Both derivatives at once (shares the spectral work).
std::array<ScalarField, 2> variational_derivatives(const PhaseState& state);

/// Splitting used by the semi-implicit steppers:
///   dE/dphi_i = stiff_i + rest_i
/// with stiff_i = eps (-Lap phi_i - (1/2) Lap phi_j) the part treated
/// implicitly and rest_i the pointwise remainder treated explicitly.
struct ForceSplit {
    std::array<ScalarField, 2> stiff;
    std::array<ScalarField, 2> rest;
};
ForceSplit split_variational_derivatives(const PhaseState& state);

} // namespace acon

#endif
