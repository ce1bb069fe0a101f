// constraint.cpp

#include "acon/constraint.hpp"

#include <cmath>
#include <string>

#include "acon/spectral.hpp"

namespace acon {

double lagrange_multiplier_from(const ScalarField& variational_deriv,
                                const ScalarField& phi,
                                const MultiplierGuard& guard) {
    const double mass = indicator_deriv_norm_sq(phi);
    if (!(mass >= guard.beta_min))
        throw DegenerateConstraint(
            "constraint-gradient mass " + std::to_string(mass) +
            " below guard floor " + std::to_string(guard.beta_min) +
            "; the field is numerically at a pure phase");
    const ScalarField fp = indicator_deriv_field(phi);
    return -inner(variational_deriv, fp) / mass;
}

double lagrange_multiplier(const PhaseState& state, int i,
                           const MultiplierGuard& guard) {
    if (i != 0 && i != 1)
        throw ConfigError("lagrange_multiplier: phase index must be 0 or 1");
    return lagrange_multiplier_from(variational_derivative(state, i),
                                    state.phase(i), guard);
}

double penalty_coefficient(const PhaseState& state, int i) {
    const ScalarField& phi = state.phase(i);
    return state.params.penalty_m * state.grid().total_volume() *
           volume_residual(phi, state.params.omega[i]);
}

ScalarField penalty_force(const PhaseState& state, int i) {
    if (i != 0 && i != 1)
        throw ConfigError("penalty_force: phase index must be 0 or 1");
    const double coeff = penalty_coefficient(state, i);
    ScalarField out = indicator_deriv_field(state.phase(i));
    for (double& v : out.values()) v *= coeff;
    return out;
}

namespace {

// mean f(phi + c fp) - omega and its c-derivative.
struct CorrectionCurve {
    const ScalarField& phi;
    const ScalarField& fp;
    double omega;

    double residual(double c) const {
        std::vector<double> vals(phi.size());
        for (std::size_t i = 0; i < phi.size(); ++i)
            vals[i] = indicator(phi[i] + c * fp[i]);
        return phi.grid().cell_volume() *
                   compensated_sum(vals.data(), vals.size()) /
                   phi.grid().total_volume() -
               omega;
    }

    double slope(double c) const {
        std::vector<double> vals(phi.size());
        for (std::size_t i = 0; i < phi.size(); ++i)
            vals[i] = indicator_deriv(phi[i] + c * fp[i]) * fp[i];
        return phi.grid().cell_volume() *
               compensated_sum(vals.data(), vals.size()) /
               phi.grid().total_volume();
    }
};

constexpr double kCorrectionBound = 0.5;
constexpr int kMaxIterations = 100;

} // namespace

ScalarField project_constraint(const ScalarField& phi, double omega,
                               const MultiplierGuard& guard, double tol) {
    const double mass = indicator_deriv_norm_sq(phi);
    if (!(mass >= guard.beta_min))
        throw DegenerateConstraint(
            "project_constraint: constraint-gradient mass below guard floor");

    const ScalarField fp = indicator_deriv_field(phi);
    CorrectionCurve curve{phi, fp, omega};

    double c = 0.0;
    double r = curve.residual(0.0);
    if (std::abs(r) <= tol) return phi; // already satisfied, leave untouched

    // Bracket [lo, hi] with a sign change, starting from c = 0. The slope
    // at 0 is mean |f'(phi)|^2 > 0, so the root normally lies on the
    // -sign(r) side; the opposite side is scanned as a fallback.
    double lo = 0.0, hi = 0.0, r_lo = r;
    bool bracketed = false;
    const int scans = 16;
    for (int pass = 0; pass < 2 && !bracketed; ++pass) {
        const double dir = (r > 0.0 ? -1.0 : 1.0) * (pass == 0 ? 1.0 : -1.0);
        double prev_c = 0.0, prev_r = r;
        for (int s = 1; s <= scans; ++s) {
            const double cc = dir * kCorrectionBound * s / scans;
            const double rr = curve.residual(cc);
            if ((rr > 0.0) != (prev_r > 0.0)) {
                lo = std::min(prev_c, cc);
                hi = std::max(prev_c, cc);
                r_lo = (prev_c < cc) ? prev_r : rr;
                bracketed = true;
                break;
            }
            prev_c = cc;
            prev_r = rr;
        }
    }
    if (!bracketed)
        throw ProjectionFailed(
            "project_constraint: no sign change of the volume residual for "
            "c in [-0.5, 0.5]");

    // Safeguarded Newton inside the bracket, bisection when Newton is
    // unusable or leaves the bracket.
    c = 0.5 * (lo + hi);
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        r = curve.residual(c);
        if (std::abs(r) <= tol) {
            ScalarField out(phi.grid());
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] = phi[i] + c * fp[i];
            return out;
        }
        if ((r > 0.0) == (r_lo > 0.0)) {
            lo = c;
            r_lo = r;
        } else {
            hi = c;
        }
        const double dr = curve.slope(c);
        double next = (dr != 0.0) ? c - r / dr : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        c = next;
    }
    throw ProjectionFailed("project_constraint: iteration cap (100) exceeded");
}

} // namespace acon
