// init.hpp
// Construction of initial states satisfying both volume constraints exactly:
// random perturbations, lamellar and spot seeds, and exact constants.

#ifndef ACON_INIT_HPP
#define ACON_INIT_HPP

#include <array>
#include <cstdint>
#include <string>

#include "acon/energy.hpp"

namespace acon {

enum class InitKind {
    RandomUniform,
    Lamellar,
    Spots,
    ConstantSymmetric,
};

const char* init_kind_name(InitKind k);
InitKind init_kind_from_name(const std::string& name); // throws ConfigError

struct InitSpec {
    InitKind kind = InitKind::RandomUniform;
    std::uint64_t seed = 0;
    double amplitude = 0.05;
    /// Levels the perturbations are built around; each must lie in (0,1).
    std::array<double, 2> base_levels{1.0 / 3.0, 1.0 / 3.0};
    /// Lamellar only: number of stripe periods across axis 0.
    int stripe_count = 4;
    /// Spots only.
    int spot_count = 4;
    double spot_radius = 0.1;

    void validate() const; // throws ConfigError
};

/// Solve f(c) = omega for c in (0,1); f is a monotone bijection there.
/// Throws UnreachableTarget when omega lies outside (0,1).
double indicator_inverse(double omega);

/// Build an initial state: raw profile per kind, then per-phase projection
/// so |mean f(phi_i) - omega_i| <= 1e-12. Deterministic given the seed.
PhaseState generate(const InitSpec& spec, const PeriodicGrid& grid,
                    const ModelParams& params);

} // namespace acon

#endif
