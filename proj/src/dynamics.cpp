// dynamics.cpp
// Time steppers. The multiplier and penalty schemes share the semi-implicit
// skeleton: the coupled Laplacian block (I + tau eps |k|^2 A) with
// A = [[1, 1/2], [1/2, 1]] is inverted per Fourier mode, everything else is
// explicit. The minimizing-movement scheme minimizes the movement functional
// with projected, preconditioned gradient descent; the preconditioner is the
// same per-mode block inverse.

#include "acon/dynamics.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "acon/spectral.hpp"

namespace acon {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Multiplier: return "multiplier";
        case Scheme::Penalty: return "penalty";
        case Scheme::MinimizingMovement: return "mm";
    }
    return "unknown";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "multiplier") return Scheme::Multiplier;
    if (name == "penalty") return Scheme::Penalty;
    if (name == "mm" || name == "minimizing_movement")
        return Scheme::MinimizingMovement;
    throw ConfigError("unknown scheme '" + name +
                      "' (expected multiplier, penalty or mm)");
}

void StepConfig::validate() const {
    if (!(tau > 0.0)) throw ConfigError("StepConfig: tau must be positive");
    if (!(inner_tol_grad > 0.0) || !(inner_tol_constraint > 0.0))
        throw ConfigError("StepConfig: inner tolerances must be positive");
    if (inner_max_iters < 1)
        throw ConfigError("StepConfig: inner_max_iters must be >= 1");
    if (!(guard.beta_min > 0.0))
        throw ConfigError("StepConfig: guard floor must be positive");
}

namespace {

using Spectrum = std::vector<std::complex<double>>;

constexpr double kBlowUpLimit = 1e6;

void check_blowup(const ScalarField& f, const char* scheme) {
    if (!all_finite(f) || max_abs(f) > kBlowUpLimit)
        throw BlowUp(std::string(scheme) +
                     ": field magnitude exceeded 1e6 (tau too large?)");
}

/// x <- (I + a A)^{-1} x per mode, A = [[1, 1/2], [1/2, 1]], a = tau eps k^2.
void apply_block_inverse(const Transform& t, double tau_eps, Spectrum& x1,
                         Spectrum& x2) {
    const auto& k2 = t.k_squared();
    for (std::size_t m = 0; m < x1.size(); ++m) {
        const double a = tau_eps * k2[m];
        const double det = (1.0 + a) * (1.0 + a) - 0.25 * a * a;
        const std::complex<double> y1 = ((1.0 + a) * x1[m] - 0.5 * a * x2[m]) / det;
        const std::complex<double> y2 = ((1.0 + a) * x2[m] - 0.5 * a * x1[m]) / det;
        x1[m] = y1;
        x2[m] = y2;
    }
}

/// Shared multiplier/penalty step. The constraint force is
/// -coeff_i * f'(phi_i) with coeff_i the Lagrange multiplier or the penalty
/// coefficient, both frozen at the current time.
std::pair<PhaseState, StepReport> semi_implicit_step(const PhaseState& state,
                                                     const StepConfig& cfg,
                                                     bool penalty) {
    cfg.validate();
    const ModelParams& p = state.params;
    const PeriodicGrid& grid = state.grid();
    const char* name = penalty ? "penalty" : "multiplier";

    StepReport report;
    report.energy_before = energy(state).total;

    ForceSplit split = split_variational_derivatives(state);
    const ScalarField fp[2] = {indicator_deriv_field(state.phi1),
                               indicator_deriv_field(state.phi2)};

    std::array<double, 2> coeff{0.0, 0.0};
    for (int i = 0; i < 2; ++i) {
        if (penalty) {
            coeff[i] = penalty_coefficient(state, i);
        } else {
            const double mass = indicator_deriv_norm_sq(state.phase(i));
            if (!(mass >= cfg.guard.beta_min))
                throw DegenerateConstraint(
                    "multiplier step: constraint-gradient mass below guard floor");
            ScalarField vd = split.stiff[i];
            for (std::size_t x = 0; x < vd.size(); ++x)
                vd[x] += split.rest[i][x];
            coeff[i] = -inner(vd, fp[i]) / mass;
        }
    }
    report.lambda = coeff;

    // Explicit forces: everything except the stiff Laplacian block.
    ScalarField force[2] = {ScalarField(grid), ScalarField(grid)};
    for (int i = 0; i < 2; ++i)
        for (std::size_t x = 0; x < force[i].size(); ++x)
            force[i][x] = -split.rest[i][x] - coeff[i] * fp[i][x];

    Transform t(grid);
    Spectrum s1, s2, f1, f2;
    t.forward(state.phi1, s1);
    t.forward(state.phi2, s2);
    t.forward(force[0], f1);
    t.forward(force[1], f2);
    for (std::size_t m = 0; m < s1.size(); ++m) {
        s1[m] += cfg.tau * f1[m];
        s2[m] += cfg.tau * f2[m];
    }
    apply_block_inverse(t, cfg.tau * p.epsilon, s1, s2);

    PhaseState next(t.inverse(s1), t.inverse(s2), p);
    if (cfg.project_each_step)
        for (int i = 0; i < 2; ++i)
            next.phase(i) =
                project_constraint(next.phase(i), p.omega[i], cfg.guard);

    for (int i = 0; i < 2; ++i) {
        check_blowup(next.phase(i), name);
        ScalarField diff = next.phase(i);
        for (std::size_t x = 0; x < diff.size(); ++x)
            diff[x] -= state.phase(i)[x];
        report.increment_l2[i] = l2_norm(diff);
        report.volume_residuals[i] = volume_residual(next.phase(i), p.omega[i]);
    }
    report.breakdown_after = energy(next);
    report.energy_after = report.breakdown_after.total;
    report.inner_iters = 1;
    return {std::move(next), report};
}

} // namespace

std::pair<PhaseState, StepReport> step_multiplier(const PhaseState& state,
                                                  const StepConfig& cfg) {
    return semi_implicit_step(state, cfg, /*penalty=*/false);
}

std::pair<PhaseState, StepReport> step_penalty(const PhaseState& state,
                                               const StepConfig& cfg) {
    return semi_implicit_step(state, cfg, /*penalty=*/true);
}

std::pair<PhaseState, StepReport> step_minimizing_movement(
    const PhaseState& state, const StepConfig& cfg) {
    cfg.validate();
    const ModelParams& p = state.params;
    const PeriodicGrid& grid = state.grid();
    const double tau = cfg.tau;

    for (int i = 0; i < 2; ++i) {
        if (std::abs(volume_residual(state.phase(i), p.omega[i])) > 1e-10)
            throw std::invalid_argument(
                "minimizing-movement step requires a constraint-satisfying "
                "input state (|mean f(phi) - omega| <= 1e-10)");
    }

    const EnergyBreakdown bd_before = energy(state);
    StepReport report;
    report.energy_before = bd_before.total;

    Transform t(grid);
    const double proj_tol = std::min(1e-12, cfg.inner_tol_constraint);

    // Movement functional F(u) = E(u) + (1/2 tau) sum_i ||u_i - phi_i^k||^2.
    auto movement_value = [&](const PhaseState& u, EnergyBreakdown& bd) {
        bd = energy(u);
        double move = 0.0;
        for (int i = 0; i < 2; ++i) {
            ScalarField diff = u.phase(i);
            for (std::size_t x = 0; x < diff.size(); ++x)
                diff[x] -= state.phase(i)[x];
            move += l2_norm_sq(diff);
        }
        return bd.total + 0.5 / tau * move;
    };

    PhaseState u = state;
    EnergyBreakdown bd_u = bd_before;
    double f_u = bd_before.total;

    double sigma = tau;
    const double sigma_min = tau * 1e-14;
    int iters = 0;
    std::array<double, 2> lam{0.0, 0.0};

    while (true) {
        // Full gradient of the movement functional at u.
        ForceSplit split = split_variational_derivatives(u);
        ScalarField grad[2] = {ScalarField(grid), ScalarField(grid)};
        for (int i = 0; i < 2; ++i)
            for (std::size_t x = 0; x < grad[i].size(); ++x)
                grad[i][x] = split.stiff[i][x] + split.rest[i][x] +
                             (u.phase(i)[x] - state.phase(i)[x]) / tau;

        const ScalarField fp[2] = {indicator_deriv_field(u.phi1),
                                   indicator_deriv_field(u.phi2)};
        double mass[2];
        for (int i = 0; i < 2; ++i) {
            mass[i] = inner(fp[i], fp[i]);
            if (!(mass[i] >= cfg.guard.beta_min))
                throw DegenerateConstraint(
                    "minimizing-movement step: constraint-gradient mass below "
                    "guard floor");
        }

        // L2-projected residual; this is the convergence measure and the
        // discrete Euler-Lagrange residual of the returned minimizer.
        double res[2];
        for (int i = 0; i < 2; ++i) {
            lam[i] = -inner(grad[i], fp[i]) / mass[i];
            ScalarField r = grad[i];
            for (std::size_t x = 0; x < r.size(); ++x)
                r[x] += lam[i] * fp[i][x];
            res[i] = l2_norm(r);
        }
        bool constraints_ok = true;
        for (int i = 0; i < 2; ++i)
            constraints_ok = constraints_ok &&
                             std::abs(volume_residual(u.phase(i), p.omega[i])) <=
                                 cfg.inner_tol_constraint;
        if (res[0] <= cfg.inner_tol_grad && res[1] <= cfg.inner_tol_grad &&
            constraints_ok)
            break;
        if (iters >= cfg.inner_max_iters)
            throw InnerSolveFailed(
                "minimizing-movement inner solve: iteration budget (" +
                std::to_string(cfg.inner_max_iters) +
                ") exhausted at residual " +
                std::to_string(std::max(res[0], res[1])));

        // Preconditioned direction, made tangent to both constraints in the
        // preconditioned metric so the fixed point satisfies the
        // Euler-Lagrange condition grad F = -lambda f'(u).
        Spectrum a1, a2;
        t.forward(grad[0], a1);
        t.forward(grad[1], a2);
        apply_block_inverse(t, tau * p.epsilon, a1, a2);
        const std::array<ScalarField, 2> pgrad{t.inverse(a1), t.inverse(a2)};

        // P applied to (f'(u_1), 0) and to (0, f'(u_2)).
        std::array<std::array<ScalarField, 2>, 2> pfp{
            std::array<ScalarField, 2>{ScalarField(grid), ScalarField(grid)},
            std::array<ScalarField, 2>{ScalarField(grid), ScalarField(grid)}};
        for (int j = 0; j < 2; ++j) {
            Spectrum b1(t.mode_count(), 0.0), b2(t.mode_count(), 0.0);
            t.forward(fp[j], j == 0 ? b1 : b2);
            apply_block_inverse(t, tau * p.epsilon, b1, b2);
            pfp[j] = {t.inverse(b1), t.inverse(b2)};
        }

        double b[2], m2[2][2];
        for (int i = 0; i < 2; ++i) {
            b[i] = inner(fp[i], pgrad[i]);
            for (int j = 0; j < 2; ++j) m2[i][j] = inner(fp[i], pfp[j][i]);
        }
        const double det = m2[0][0] * m2[1][1] - m2[0][1] * m2[1][0];
        if (!(std::abs(det) > 0.0))
            throw DegenerateConstraint(
                "minimizing-movement step: singular multiplier system");
        const double lh0 = (-b[0] * m2[1][1] + b[1] * m2[0][1]) / det;
        const double lh1 = (-b[1] * m2[0][0] + b[0] * m2[1][0]) / det;

        ScalarField dir[2] = {ScalarField(grid), ScalarField(grid)};
        for (int i = 0; i < 2; ++i)
            for (std::size_t x = 0; x < dir[i].size(); ++x)
                dir[i][x] = -(pgrad[i][x] + lh0 * pfp[0][i][x] +
                              lh1 * pfp[1][i][x]);

        // Backtracking on the movement functional. Tiny increases at the
        // roundoff plateau are accepted so the residual can keep contracting
        // once F stops being resolvable in double precision.
        bool accepted = false;
        while (sigma >= sigma_min) {
            bool trial_ok = true;
            PhaseState v = u;
            try {
                for (int i = 0; i < 2; ++i) {
                    ScalarField w = u.phase(i);
                    for (std::size_t x = 0; x < w.size(); ++x)
                        w[x] += sigma * dir[i][x];
                    v.phase(i) =
                        project_constraint(w, p.omega[i], cfg.guard, proj_tol);
                }
            } catch (const ProjectionFailed&) {
                trial_ok = false;
            } catch (const DegenerateConstraint&) {
                trial_ok = false;
            }
            if (trial_ok) {
                EnergyBreakdown bd_v;
                const double f_v = movement_value(v, bd_v);
                const double slack =
                    4.0 * std::numeric_limits<double>::epsilon() *
                    (1.0 + std::abs(f_u));
                if (std::isfinite(f_v) && f_v <= f_u + slack) {
                    u = std::move(v);
                    f_u = f_v;
                    bd_u = bd_v;
                    sigma = std::min(sigma * 1.5, tau);
                    accepted = true;
                    break;
                }
            }
            sigma *= 0.5;
        }
        if (!accepted)
            throw InnerSolveFailed(
                "minimizing-movement inner solve: line search stalled at "
                "residual " +
                std::to_string(std::max(res[0], res[1])));
        ++iters;
    }

    report.lambda = lam;
    report.inner_iters = iters;
    double move_sq = 0.0;
    for (int i = 0; i < 2; ++i) {
        check_blowup(u.phase(i), "mm");
        ScalarField diff = u.phase(i);
        for (std::size_t x = 0; x < diff.size(); ++x)
            diff[x] -= state.phase(i)[x];
        report.increment_l2[i] = l2_norm(diff);
        move_sq += report.increment_l2[i] * report.increment_l2[i];
        report.volume_residuals[i] = volume_residual(u.phase(i), p.omega[i]);
    }
    report.breakdown_after = bd_u;
    report.energy_after = bd_u.total;
    report.mm_inequality_slack = std::max(
        0.0, report.energy_after + 0.5 / tau * move_sq - report.energy_before);
    return {std::move(u), report};
}

std::pair<PhaseState, StepReport> step(const PhaseState& state,
                                       const StepConfig& cfg) {
    state.params.validate();
    switch (cfg.scheme) {
        case Scheme::Multiplier: return step_multiplier(state, cfg);
        case Scheme::Penalty: return step_penalty(state, cfg);
        case Scheme::MinimizingMovement:
            return step_minimizing_movement(state, cfg);
    }
    throw ConfigError("step: unknown scheme");
}

namespace {

template <class E>
[[noreturn]] void rethrow_at_step(const E& e, std::int64_t k) {
    throw E("step " + std::to_string(k) + ": " + e.what());
}

} // namespace

Trajectory run(const PhaseState& initial, const StepConfig& cfg, double horizon,
               std::int64_t snapshot_every) {
    cfg.validate();
    initial.params.validate();
    if (!(horizon > 0.0)) throw ConfigError("run: horizon must be positive");

    if (cfg.scheme == Scheme::Penalty &&
        cfg.tau * initial.params.penalty_m > 1.0)
        std::cerr << "warning: tau * M = " << cfg.tau * initial.params.penalty_m
                  << " exceeds the soft stability limit 1 for the penalty "
                     "scheme\n";

    // floor(horizon / tau), robust to the quotient landing 1 ulp short.
    const auto steps =
        static_cast<std::int64_t>(std::floor(horizon / cfg.tau + 1e-9));

    Trajectory traj(initial);
    traj.times.reserve(static_cast<std::size_t>(std::max<std::int64_t>(steps, 0)));
    PhaseState current = initial;
    for (std::int64_t k = 0; k < steps; ++k) {
        try {
            auto [next, report] = step(current, cfg);
            current = std::move(next);
            traj.reports.push_back(report);
        } catch (const DegenerateConstraint& e) {
            rethrow_at_step(e, k + 1);
        } catch (const ProjectionFailed& e) {
            rethrow_at_step(e, k + 1);
        } catch (const InnerSolveFailed& e) {
            rethrow_at_step(e, k + 1);
        } catch (const BlowUp& e) {
            rethrow_at_step(e, k + 1);
        }
        traj.times.push_back(static_cast<double>(k + 1) * cfg.tau);
        if (snapshot_every > 0 && (k + 1) % snapshot_every == 0)
            traj.snapshots.emplace_back(k + 1, current);
    }
    traj.final_state = std::move(current);
    return traj;
}

} // namespace acon
