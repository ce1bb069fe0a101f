// energy.cpp
// Free energy and its exact discrete gradient. Gradient-squared integrals
// go through Parseval with the full |k|^2 symbol so that the variational
// derivative below is the exact gradient of the discrete energy.

#include "acon/energy.hpp"

#include <complex>
#include <vector>

#include "acon/spectral.hpp"

namespace acon {

namespace {

using Spectrum = std::vector<std::complex<double>>;

double k2_form(const Transform& t, const Spectrum& a, const Spectrum& b) {
    const auto& k2 = t.k_squared();
    const auto& w = t.mode_weight();
    std::vector<double> terms(a.size());
    for (std::size_t m = 0; m < a.size(); ++m) {
        const double re = a[m].real() * b[m].real() + a[m].imag() * b[m].imag();
        terms[m] = w[m] * k2[m] * re;
    }
    const double n = static_cast<double>(t.grid().node_count());
    return t.grid().cell_volume() / n *
           compensated_sum(terms.data(), terms.size());
}

ScalarField potential_of(const Transform& t, const Spectrum& g_spec) {
    const auto& k2 = t.k_squared();
    Spectrum s(g_spec.size());
    s[0] = 0.0;
    for (std::size_t m = 1; m < s.size(); ++m) s[m] = g_spec[m] / k2[m];
    return t.inverse(s);
}

} // namespace

EnergyBreakdown energy(const PhaseState& state) {
    const ModelParams& p = state.params;
    const PeriodicGrid& grid = state.grid();
    Transform t(grid);

    Spectrum s1, s2;
    t.forward(state.phi1, s1);
    t.forward(state.phi2, s2);

    EnergyBreakdown out;
    out.interfacial = 0.5 * p.epsilon *
                      (k2_form(t, s1, s1) + k2_form(t, s2, s2) + k2_form(t, s1, s2));

    {
        std::vector<double> wt(state.phi1.size());
        for (std::size_t i = 0; i < wt.size(); ++i)
            wt[i] = triple_well(state.phi1[i], state.phi2[i]);
        out.potential = 0.5 / p.epsilon * grid.cell_volume() *
                        compensated_sum(wt.data(), wt.size());
    }

    {
        ScalarField g[2] = {indicator_field(state.phi1), indicator_field(state.phi2)};
        for (int i = 0; i < 2; ++i)
            for (double& v : g[i].values()) v -= p.omega[i];
        Spectrum gs;
        ScalarField psi[2] = {ScalarField(grid), ScalarField(grid)};
        for (int i = 0; i < 2; ++i) {
            t.forward(g[i], gs);
            psi[i] = potential_of(t, gs);
        }
        double lr = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                lr += 0.5 * p.gamma[i][j] * inner(g[i], psi[j]);
        out.longrange = lr;
    }

    out.total = out.interfacial + out.potential + out.longrange;
    return out;
}

ForceSplit split_variational_derivatives(const PhaseState& state) {
    const ModelParams& p = state.params;
    const PeriodicGrid& grid = state.grid();
    Transform t(grid);

    Spectrum s1, s2;
    t.forward(state.phi1, s1);
    t.forward(state.phi2, s2);

    // eps (-Lap phi_i - (1/2) Lap phi_j), assembled in Fourier space.
    const auto& k2 = t.k_squared();
    Spectrum mix(s1.size());
    for (std::size_t m = 0; m < mix.size(); ++m)
        mix[m] = p.epsilon * k2[m] * (s1[m] + 0.5 * s2[m]);
    ScalarField stiff1 = t.inverse(mix);
    for (std::size_t m = 0; m < mix.size(); ++m)
        mix[m] = p.epsilon * k2[m] * (s2[m] + 0.5 * s1[m]);
    ScalarField stiff2 = t.inverse(mix);

    ScalarField psi[2] = {ScalarField(grid), ScalarField(grid)};
    for (int i = 0; i < 2; ++i) {
        ScalarField g = indicator_field(state.phase(i));
        for (double& v : g.values()) v -= p.omega[i];
        Spectrum gs;
        t.forward(g, gs);
        psi[i] = potential_of(t, gs);
    }

    ForceSplit out{{std::move(stiff1), std::move(stiff2)},
                   {ScalarField(grid), ScalarField(grid)}};
    const double half_inv_eps = 0.5 / p.epsilon;
    for (int i = 0; i < 2; ++i) {
        const ScalarField& phi_i = state.phase(i);
        const double g0 = p.gamma[i][0];
        const double g1 = p.gamma[i][1];
        ScalarField& v = out.rest[i];
        for (std::size_t x = 0; x < v.size(); ++x) {
            const double wt_part =
                triple_well_partial(i, state.phi1[x], state.phi2[x]);
            v[x] = half_inv_eps * wt_part +
                   indicator_deriv(phi_i[x]) * (g0 * psi[0][x] + g1 * psi[1][x]);
        }
    }
    return out;
}

std::array<ScalarField, 2> variational_derivatives(const PhaseState& state) {
    ForceSplit split = split_variational_derivatives(state);
    std::array<ScalarField, 2> out = std::move(split.stiff);
    for (int i = 0; i < 2; ++i)
        for (std::size_t x = 0; x < out[i].size(); ++x)
            out[i][x] += split.rest[i][x];
    return out;
}

ScalarField variational_derivative(const PhaseState& state, int i) {
    if (i != 0 && i != 1)
        throw ConfigError("variational_derivative: phase index must be 0 or 1");
    return variational_derivatives(state)[static_cast<std::size_t>(i)];
}

} // namespace acon
