// chemistry.hpp
// Pointwise chemistry of the ternary system: double well, triple well,
// smooth indicator, and the field-level constraint quantities built on them.
//
// The polynomials are globally defined; no clamping of phi to [0,1] anywhere.

#ifndef ACON_CHEMISTRY_HPP
#define ACON_CHEMISTRY_HPP

#include <array>

#include "acon/grid.hpp"

namespace acon {

/// Double well W(s) = 18 (s^2 - s)^2, minima at 0 and 1.
inline double well(double s) {
    const double q = s * s - s;
    return 18.0 * q * q;
}

/// W'(s) = 36 (s^2 - s)(2s - 1).
inline double well_deriv(double s) {
    return 36.0 * (s * s - s) * (2.0 * s - 1.0);
}

/// W''(s) = 36 (6 s^2 - 6 s + 1).
inline double well_deriv2(double s) {
    return 36.0 * (6.0 * s * s - 6.0 * s + 1.0);
}

/// Triple well W(p1) + W(p2) + W(1 - p1 - p2), minima at the pure phases.
inline double triple_well(double p1, double p2) {
    return well(p1) + well(p2) + well(1.0 - p1 - p2);
}

/// Partial derivative of the triple well with respect to phase i (0 or 1):
/// W'(p_i) - W'(1 - p1 - p2).
inline double triple_well_partial(int i, double p1, double p2) {
    const double s = (i == 0) ? p1 : p2;
    return well_deriv(s) - well_deriv(1.0 - p1 - p2);
}

/// Smooth species indicator f(s) = 3 s^2 - 2 s^3; maps [0,1] onto [0,1].
inline double indicator(double s) {
    return 3.0 * s * s - 2.0 * s * s * s;
}

/// f'(s) = 6 s (1 - s).
inline double indicator_deriv(double s) {
    return 6.0 * s - 6.0 * s * s;
}

/// f''(s) = 6 - 12 s.
inline double indicator_deriv2(double s) {
    return 6.0 - 12.0 * s;
}

/// Model parameters: interface width, long-range interaction matrix,
/// target volume fractions and the penalty constant.
struct ModelParams {
    double epsilon = 1.0;
    /// gamma[i][j]; must be symmetric positive definite.
    std::array<std::array<double, 2>, 2> gamma{{{1.0, 0.0}, {0.0, 1.0}}};
    /// Target box averages of f(phi_i).
    std::array<double, 2> omega{0.5, 0.5};
    /// Penalty constant M (penalty scheme only).
    double penalty_m = 1.0e3;

    /// Throws ConfigError unless epsilon > 0, gamma is symmetric positive
    /// definite, omega_i != 0, 1 and penalty_m > 0.
    void validate() const;
};

/// mean f(phi) - omega; zero (to 1e-12) means the constraint holds.
double volume_residual(const ScalarField& phi, double omega);

/// int |f'(phi)|^2, the constraint-gradient mass. Positive away from
/// the degenerate states phi = 0 and phi = 1.
double indicator_deriv_norm_sq(const ScalarField& phi);

/// Pointwise maps over a whole field.
ScalarField indicator_field(const ScalarField& phi);
ScalarField indicator_deriv_field(const ScalarField& phi);

} // namespace acon

#endif
