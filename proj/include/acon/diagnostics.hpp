// diagnostics.hpp
// Runtime monitors for the structural properties of the flow: the H1 energy
// bound, the Green-function pairing identity, and the dissipation audit.

#ifndef ACON_DIAGNOSTICS_HPP
#define ACON_DIAGNOSTICS_HPP

#include <array>
#include <utility>

#include "acon/dynamics.hpp"
#include "acon/energy.hpp"

namespace acon {

struct H1BoundCheck {
    double lhs = 0.0; ///< max_i ||phi_i||_{H1}^2
    double rhs = 0.0; ///< 4 E(phi1, phi2) + 2
    bool ok = false;  ///< lhs <= rhs + 1e-9
};

/// Check max_i ||phi_i||_{H1}^2 <= 4 E + 2 in the normalized configuration.
/// Throws ConfigMismatch unless epsilon = 1 and |box| = 1 (the constants of
/// the bound are specific to that normalization); the state must satisfy
/// both volume constraints to 1e-10.
H1BoundCheck check_h1_bound(const PhaseState& state);

/// For Psi the zero-mean inverse-Laplacian potential of w, returns
/// (int |grad Psi|^2, int w Psi). The two agree to relative 1e-10; this is
/// an exact identity of the discrete spectral operators.
std::pair<double, double> check_hls_identity(const ScalarField& w);

/// Largest positive energy jump between consecutive recorded energies
/// (0 for a perfectly dissipative run).
double dissipation_audit(const Trajectory& traj);

/// Cross-cutting summary of a finished trajectory. field_range and
/// min_fprime_mass are evaluated over the stored snapshots plus the final
/// state; h1 fields are only meaningful when h1_checked is true.
struct DiagnosticsReport {
    bool h1_checked = false;
    bool h1_bound_satisfied = false;
    double min_fprime_mass = 0.0;
    bool energy_monotone = false; ///< dissipation_audit <= 1e-9
    double max_volume_residual = 0.0;
    std::array<std::pair<double, double>, 2> field_range{};
};

DiagnosticsReport summarize(const Trajectory& traj);

} // namespace acon

#endif
