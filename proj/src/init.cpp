// init.cpp
// Initial-state construction. Raw profiles are built per kind, then each
// phase is projected so the volume constraints hold to 1e-12 exactly as the
// steppers expect. Everything is deterministic given the seed.

#include "acon/init.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "acon/constraint.hpp"
#include "acon/rng.hpp"
#include "acon/spectral.hpp"

namespace acon {

const char* init_kind_name(InitKind k) {
    switch (k) {
        case InitKind::RandomUniform: return "random_uniform";
        case InitKind::Lamellar: return "lamellar";
        case InitKind::Spots: return "spots";
        case InitKind::ConstantSymmetric: return "constant_symmetric";
    }
    return "unknown";
}

InitKind init_kind_from_name(const std::string& name) {
    if (name == "random_uniform") return InitKind::RandomUniform;
    if (name == "lamellar") return InitKind::Lamellar;
    if (name == "spots") return InitKind::Spots;
    if (name == "constant_symmetric") return InitKind::ConstantSymmetric;
    throw ConfigError("unknown init kind '" + name + "'");
}

void InitSpec::validate() const {
    if (!(amplitude >= 0.0))
        throw ConfigError("InitSpec: amplitude must be nonnegative");
    for (double b : base_levels)
        if (!(b > 0.0) || !(b < 1.0))
            throw ConfigError("InitSpec: base levels must lie in (0,1)");
    if (stripe_count < 1) throw ConfigError("InitSpec: stripe_count must be >= 1");
    if (spot_count < 1) throw ConfigError("InitSpec: spot_count must be >= 1");
    if (!(spot_radius > 0.0))
        throw ConfigError("InitSpec: spot_radius must be positive");
}

double indicator_inverse(double omega) {
    if (!(omega > 0.0) || !(omega < 1.0))
        throw UnreachableTarget(
            "no constant level c in (0,1) with mean f(c) = " +
            std::to_string(omega) + "; omega must lie in (0,1)");
    // f is a strictly increasing bijection of [0,1]; bisection then Newton.
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (lo + hi);
        (indicator(mid) < omega ? lo : hi) = mid;
    }
    double c = 0.5 * (lo + hi);
    for (int i = 0; i < 8; ++i) {
        const double d = indicator_deriv(c);
        if (d <= 0.0) break;
        const double cn = c - (indicator(c) - omega) / d;
        if (cn <= 0.0 || cn >= 1.0) break;
        if (cn == c) break;
        c = cn;
    }
    return c;
}

namespace {

// Periodic minimum-image distance squared between x and a center.
double periodic_dist_sq(const PeriodicGrid& grid, const std::vector<double>& x,
                        const std::vector<double>& center) {
    double d2 = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
        const double period = 2.0 * grid.box_half_lengths()[a];
        double d = std::fmod(std::abs(x[a] - center[a]), period);
        if (d > 0.5 * period) d = period - d;
        d2 += d * d;
    }
    return d2;
}

// Iterate row-major over all nodes, calling fn(flat_index, coordinates).
template <class Fn>
void for_each_node(const PeriodicGrid& grid, Fn&& fn) {
    const int d = grid.dim();
    const auto& n = grid.points_per_axis();
    std::vector<int> idx(d, 0);
    std::vector<double> x(d);
    const std::int64_t total = grid.node_count();
    for (std::int64_t flat = 0; flat < total; ++flat) {
        for (int a = 0; a < d; ++a) x[a] = grid.coordinate(a, idx[a]);
        fn(static_cast<std::size_t>(flat), x);
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < n[a]) break;
            idx[a] = 0;
        }
    }
}

} // namespace

PhaseState generate(const InitSpec& spec, const PeriodicGrid& grid,
                    const ModelParams& params) {
    spec.validate();
    params.validate();

    // Reachability: the construction needs a constant level per phase.
    const double c1 = indicator_inverse(params.omega[0]);
    const double c2 = indicator_inverse(params.omega[1]);

    ScalarField phi1(grid), phi2(grid);

    switch (spec.kind) {
        case InitKind::ConstantSymmetric: {
            for (std::size_t i = 0; i < phi1.size(); ++i) {
                phi1[i] = c1;
                phi2[i] = c2;
            }
            // Exact constants: |f(c_i) - omega_i| is at roundoff already,
            // no projection needed.
            return PhaseState(std::move(phi1), std::move(phi2), params);
        }
        case InitKind::RandomUniform: {
            Xoshiro256PlusPlus rng(spec.seed);
            for (std::size_t i = 0; i < phi1.size(); ++i)
                phi1[i] = spec.base_levels[0] +
                          spec.amplitude * rng.uniform(-1.0, 1.0);
            for (std::size_t i = 0; i < phi2.size(); ++i)
                phi2[i] = spec.base_levels[1] +
                          spec.amplitude * rng.uniform(-1.0, 1.0);
            break;
        }
        case InitKind::Lamellar: {
            // Stripes along axis 0, the two phases offset by a third of a
            // period so the implicit species fills the remaining band.
            const double x0 = grid.box_half_lengths()[0];
            for_each_node(grid, [&](std::size_t i, const std::vector<double>& x) {
                const double theta =
                    M_PI * spec.stripe_count * (x[0] + x0) / x0;
                phi1[i] = spec.base_levels[0] + spec.amplitude * std::cos(theta);
                phi2[i] = spec.base_levels[1] +
                          spec.amplitude * std::cos(theta - 2.0 * M_PI / 3.0);
            });
            break;
        }
        case InitKind::Spots: {
            Xoshiro256PlusPlus rng(spec.seed);
            std::vector<std::vector<double>> centers(
                static_cast<std::size_t>(spec.spot_count));
            for (auto& c : centers) {
                c.resize(grid.dim());
                for (int a = 0; a < grid.dim(); ++a) {
                    const double half = grid.box_half_lengths()[a];
                    c[a] = rng.uniform(-half, half);
                }
            }
            const double r2 = 2.0 * spec.spot_radius * spec.spot_radius;
            for_each_node(grid, [&](std::size_t i, const std::vector<double>& x) {
                double bump1 = 0.0, bump2 = 0.0;
                for (std::size_t s = 0; s < centers.size(); ++s) {
                    const double g =
                        std::exp(-periodic_dist_sq(grid, x, centers[s]) / r2);
                    (s % 2 == 0 ? bump1 : bump2) += g;
                }
                phi1[i] = spec.base_levels[0] +
                          spec.amplitude * (bump1 - 0.5 * bump2);
                phi2[i] = spec.base_levels[1] +
                          spec.amplitude * (bump2 - 0.5 * bump1);
            });
            break;
        }
    }

    MultiplierGuard guard;
    phi1 = project_constraint(phi1, params.omega[0], guard);
    phi2 = project_constraint(phi2, params.omega[1], guard);
    return PhaseState(std::move(phi1), std::move(phi2), params);
}

} // namespace acon
