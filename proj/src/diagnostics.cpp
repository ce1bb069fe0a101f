// diagnostics.cpp

#include "acon/diagnostics.hpp"

#include <cmath>

#include "acon/spectral.hpp"

namespace acon {

H1BoundCheck check_h1_bound(const PhaseState& state) {
    const ModelParams& p = state.params;
    if (std::abs(p.epsilon - 1.0) > 1e-12 ||
        std::abs(state.grid().total_volume() - 1.0) > 1e-12)
        throw ConfigMismatch(
            "check_h1_bound: defined only for epsilon = 1 on a unit-volume box");
    for (int i = 0; i < 2; ++i)
        if (std::abs(volume_residual(state.phase(i), p.omega[i])) > 1e-10)
            throw std::invalid_argument(
                "check_h1_bound: state must satisfy both volume constraints");

    H1BoundCheck out;
    out.lhs = std::max(h1_norm_sq(state.phi1), h1_norm_sq(state.phi2));
    out.rhs = 4.0 * energy(state).total + 2.0;
    out.ok = out.lhs <= out.rhs + 1e-9;
    return out;
}

std::pair<double, double> check_hls_identity(const ScalarField& w) {
    const ScalarField psi = inv_neg_laplacian(w);
    return {grad_norm_sq(psi), inner(w, psi)};
}

double dissipation_audit(const Trajectory& traj) {
    double worst = 0.0;
    double prev = traj.reports.empty() ? 0.0 : traj.reports.front().energy_before;
    for (const StepReport& r : traj.reports) {
        worst = std::max(worst, r.energy_before - prev); // 0 by construction
        worst = std::max(worst, r.energy_after - r.energy_before);
        prev = r.energy_after;
    }
    return worst;
}

DiagnosticsReport summarize(const Trajectory& traj) {
    DiagnosticsReport out;
    out.energy_monotone = dissipation_audit(traj) <= 1e-9;

    double max_res = 0.0;
    for (const StepReport& r : traj.reports)
        for (double v : r.volume_residuals) max_res = std::max(max_res, std::abs(v));
    out.max_volume_residual = max_res;

    auto scan_state = [&](const PhaseState& s, bool first) {
        for (int i = 0; i < 2; ++i) {
            const double mass = indicator_deriv_norm_sq(s.phase(i));
            out.min_fprime_mass =
                first && i == 0 ? mass : std::min(out.min_fprime_mass, mass);
            double lo = s.phase(i)[0], hi = s.phase(i)[0];
            for (double v : s.phase(i).values()) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (first) {
                out.field_range[i] = {lo, hi};
            } else {
                out.field_range[i].first = std::min(out.field_range[i].first, lo);
                out.field_range[i].second = std::max(out.field_range[i].second, hi);
            }
        }
    };
    bool first = true;
    for (const auto& [step_index, s] : traj.snapshots) {
        scan_state(s, first);
        first = false;
    }
    scan_state(traj.final_state, first);

    const ModelParams& p = traj.final_state.params;
    bool final_on_constraint = true;
    for (int i = 0; i < 2; ++i)
        final_on_constraint =
            final_on_constraint &&
            std::abs(volume_residual(traj.final_state.phase(i), p.omega[i])) <=
                1e-10;
    const bool normalized =
        std::abs(p.epsilon - 1.0) <= 1e-12 &&
        std::abs(traj.final_state.grid().total_volume() - 1.0) <= 1e-12;
    if (normalized && final_on_constraint) {
        out.h1_checked = true;
        out.h1_bound_satisfied = check_h1_bound(traj.final_state).ok;
    }
    return out;
}

} // namespace acon
