// constraint.hpp
// The two mechanisms enforcing mean f(phi_i) = omega_i along the flow:
// exact Lagrange multipliers with a guarded denominator, penalty forcing,
// and a post-step projection that restores the constraint exactly.

#ifndef ACON_CONSTRAINT_HPP
#define ACON_CONSTRAINT_HPP

#include "acon/energy.hpp"
#include "acon/grid.hpp"

namespace acon {

/// Floor for the constraint-gradient mass int |f'(phi)|^2. The analysis
/// guarantees a positive lower bound exists along solutions but never
/// quantifies it; the guard turns the hypothesis into a detectable failure.
struct MultiplierGuard {
    double beta_min = 1e-8;
};

/// lambda_i = int (-dE/dphi_i) f'(phi_i) / int |f'(phi_i)|^2, the multiplier
/// that makes the constrained force L2-orthogonal to f'(phi_i).
/// Throws DegenerateConstraint when the denominator is below the guard floor.
double lagrange_multiplier(const PhaseState& state, int i,
                           const MultiplierGuard& guard = {});

/// Same multiplier from a precomputed dE/dphi_i (avoids recomputation
/// inside the steppers).
double lagrange_multiplier_from(const ScalarField& variational_deriv,
                                const ScalarField& phi,
                                const MultiplierGuard& guard = {});

/// Penalty replacement of the multiplier term:
///   M * (int (f(phi_i) - omega_i) dx) * f'(phi_i).
ScalarField penalty_force(const PhaseState& state, int i);

/// Scalar coefficient of the penalty force, M * int (f(phi_i) - omega_i) dx.
double penalty_coefficient(const PhaseState& state, int i);

/// Returns phi + c f'(phi) with the scalar c chosen (safeguarded Newton with
/// bisection fallback, c in [-1/2, 1/2]) so that |mean f(.) - omega| <= tol.
/// An input already within tol is returned unchanged.
/// Throws ProjectionFailed when no root is found, DegenerateConstraint when
/// int |f'(phi)|^2 is below the guard floor.
ScalarField project_constraint(const ScalarField& phi, double omega,
                               const MultiplierGuard& guard = {},
                               double tol = 1e-12);

} // namespace acon

#endif
