// chemistry.cpp

#include "acon/chemistry.hpp"

#include <cmath>

#include "acon/spectral.hpp"

namespace acon {

void ModelParams::validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw ConfigError("ModelParams: epsilon must be positive");
    if (gamma[0][1] != gamma[1][0])
        throw ConfigError("ModelParams: gamma matrix must be symmetric");
    const double det = gamma[0][0] * gamma[1][1] - gamma[0][1] * gamma[1][0];
    if (!(gamma[0][0] > 0.0) || !(det > 0.0))
        throw ConfigError("ModelParams: gamma matrix must be positive definite");
    for (double w : omega) {
        if (!std::isfinite(w) || w == 0.0 || w == 1.0)
            throw ConfigError(
                "ModelParams: omega_i = 0 or 1 means a single species fills the box; "
                "not admissible");
    }
    if (!(penalty_m > 0.0))
        throw ConfigError("ModelParams: penalty_m must be positive");
}

double volume_residual(const ScalarField& phi, double omega) {
    std::vector<double> vals(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) vals[i] = indicator(phi[i]);
    const double total = phi.grid().cell_volume() *
                         compensated_sum(vals.data(), vals.size());
    return total / phi.grid().total_volume() - omega;
}

double indicator_deriv_norm_sq(const ScalarField& phi) {
    std::vector<double> vals(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double d = indicator_deriv(phi[i]);
        vals[i] = d * d;
    }
    return phi.grid().cell_volume() * compensated_sum(vals.data(), vals.size());
}

ScalarField indicator_field(const ScalarField& phi) {
    ScalarField out(phi.grid());
    for (std::size_t i = 0; i < phi.size(); ++i) out[i] = indicator(phi[i]);
    return out;
}

ScalarField indicator_deriv_field(const ScalarField& phi) {
    ScalarField out(phi.grid());
    for (std::size_t i = 0; i < phi.size(); ++i) out[i] = indicator_deriv(phi[i]);
    return out;
}

} // namespace acon
