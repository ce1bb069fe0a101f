// dynamics.hpp
// Time steppers for the constrained gradient flow: the semi-implicit
// spectral multiplier scheme, the penalty scheme, and the De Giorgi
// minimizing-movement scheme, plus the driver that iterates them.

#ifndef ACON_DYNAMICS_HPP
#define ACON_DYNAMICS_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "acon/constraint.hpp"
#include "acon/energy.hpp"

namespace acon {

enum class Scheme {
    Multiplier,
    Penalty,
    MinimizingMovement,
};

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name); // throws ConfigError

struct StepConfig {
    double tau = 1e-3;
    Scheme scheme = Scheme::MinimizingMovement;
    /// Multiplier/Penalty only: restore the constraints exactly after the
    /// linear update. The minimizing-movement scheme projects intrinsically.
    bool project_each_step = true;
    /// Minimizing movement: L2 tolerance on the projected gradient of the
    /// movement functional.
    double inner_tol_grad = 1e-9;
    /// Minimizing movement: tolerance on |mean f(phi_i) - omega_i|.
    double inner_tol_constraint = 1e-11;
    int inner_max_iters = 10000;
    MultiplierGuard guard{};

    void validate() const; // throws ConfigError
};

/// Per-step record. For the minimizing-movement scheme the slack is
///   max(0, E_after + (1/2 tau) sum_i ||phi_i^+ - phi_i||^2 - E_before),
/// which the scheme keeps at roundoff level.
struct StepReport {
    double energy_before = 0.0;
    double energy_after = 0.0;
    EnergyBreakdown breakdown_after{};
    /// Multipliers: Lagrange multipliers, the discrete movement multipliers,
    /// or the penalty coefficients, depending on the scheme.
    std::array<double, 2> lambda{0.0, 0.0};
    std::array<double, 2> volume_residuals{0.0, 0.0};
    std::array<double, 2> increment_l2{0.0, 0.0};
    int inner_iters = 0;
    double mm_inequality_slack = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StepReport> reports;
    /// (step index, state) pairs captured every snapshot_every steps.
    std::vector<std::pair<std::int64_t, PhaseState>> snapshots;
    PhaseState final_state;

    explicit Trajectory(PhaseState initial) : final_state(std::move(initial)) {}
};

/// One semi-implicit update: the coupled Laplacian block is inverted per
/// Fourier mode, every nonlinear term (triple-well force, long-range force,
/// lambda_i f'(phi_i)) is explicit at the current time.
std::pair<PhaseState, StepReport> step_multiplier(const PhaseState& state,
                                                  const StepConfig& cfg);

/// Same skeleton with the penalty force in place of the multiplier term.
/// report.lambda holds the penalty coefficients M int (f(phi_i) - omega_i).
std::pair<PhaseState, StepReport> step_penalty(const PhaseState& state,
                                               const StepConfig& cfg);

/// One De Giorgi step: approximately minimizes
///   F_tau(u; phi^k) = E(u) + (1/2 tau) sum_i ||u_i - phi_i^k||^2
/// over the constraint manifold by preconditioned projected gradient
/// descent with backtracking. The input must satisfy both constraints
/// to 1e-10. The accepted iterates never increase F_tau, so the discrete
/// energy inequality holds up to summation roundoff.
std::pair<PhaseState, StepReport> step_minimizing_movement(const PhaseState& state,
                                                           const StepConfig& cfg);

/// Dispatch on cfg.scheme.
std::pair<PhaseState, StepReport> step(const PhaseState& state,
                                       const StepConfig& cfg);

/// Iterate the configured stepper floor(horizon / tau) times. Stepper errors
/// propagate with the failing step index attached to the message. Snapshots
/// are stored every snapshot_every steps (0 disables them).
Trajectory run(const PhaseState& initial, const StepConfig& cfg,
               double horizon, std::int64_t snapshot_every = 0);

} // namespace acon

#endif
