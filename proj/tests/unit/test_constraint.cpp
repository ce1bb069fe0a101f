// test_constraint.cpp
// Multipliers, penalty forcing and the constraint projection.

#include "doctest.h"

#include <cmath>
#include <random>

#include "acon/constraint.hpp"
#include "acon/spectral.hpp"
#include "oracles.hpp"

using namespace acon;
using test::random_field;

namespace {

ModelParams unit_params(double w1, double w2) {
    ModelParams p;
    p.epsilon = 1.0;
    p.gamma = {{{2.0, 0.5}, {0.5, 2.0}}};
    p.omega = {w1, w2};
    return p;
}

} // namespace

TEST_CASE("multiplier vanishes at the symmetric stationary state") {
    PeriodicGrid g({16, 16}, {0.5, 0.5});
    ModelParams p = unit_params(7.0 / 27.0, 7.0 / 27.0);
    PhaseState s(ScalarField(g, 1.0 / 3.0), ScalarField(g, 1.0 / 3.0), p);
    CHECK(std::abs(lagrange_multiplier(s, 0)) <= 1e-12);
    CHECK(std::abs(lagrange_multiplier(s, 1)) <= 1e-12);
}

TEST_CASE("multiplier on a constant state reduces to the hand formula") {
    // phi1 = 0.4, phi2 = 0.3, matching omegas, eps = 1: the only surviving
    // force is the triple-well one, so
    //   lambda_1 = -(W'(0.4) - W'(0.3)) / (2 f'(0.4)) = 0.45,
    //   lambda_2 = 0 because 1 - 0.4 - 0.3 = 0.3 makes its W' terms cancel.
    PeriodicGrid g({16, 16}, {0.5, 0.5});
    ModelParams p = unit_params(indicator(0.4), indicator(0.3));
    PhaseState s(ScalarField(g, 0.4), ScalarField(g, 0.3), p);

    const double lam1 = lagrange_multiplier(s, 0);
    const double expected =
        -(well_deriv(0.4) - well_deriv(0.3)) / (2.0 * indicator_deriv(0.4));
    CHECK(expected == doctest::Approx(0.45).epsilon(1e-12)); // hand value
    CHECK(lam1 == doctest::Approx(expected).epsilon(1e-11));
    CHECK(std::abs(lagrange_multiplier(s, 1)) <= 1e-11);
}

TEST_CASE("multiplier orthogonality on random states") {
    std::mt19937_64 rng(67);
    PeriodicGrid g({8, 8}, {0.5, 0.6});
    ModelParams p = unit_params(0.3, 0.4);
    for (int trial = 0; trial < 10; ++trial) {
        PhaseState s(random_field(g, rng, 0.1, 0.9), random_field(g, rng, 0.1, 0.9), p);
        for (int i = 0; i < 2; ++i) {
            const ScalarField vd = variational_derivative(s, i);
            const double lam = lagrange_multiplier(s, i);
            ScalarField force = vd;
            const ScalarField fp = indicator_deriv_field(s.phase(i));
            for (std::size_t x = 0; x < force.size(); ++x)
                force[x] = -vd[x] - lam * fp[x];
            const double resid = inner(force, fp);
            CHECK(std::abs(resid) <= 1e-10 * indicator_deriv_norm_sq(s.phase(i)));
        }
    }
}

TEST_CASE("multiplier guard trips at a numerically pure phase") {
    PeriodicGrid g({8, 8}, {0.5, 0.5});
    ModelParams p = unit_params(0.3, 0.4);
    // f'(0) = 0: the denominator is exactly zero.
    PhaseState s(ScalarField(g, 0.0), ScalarField(g, 0.5), p);
    CHECK_THROWS_AS(lagrange_multiplier(s, 0), DegenerateConstraint);
    CHECK_NOTHROW(lagrange_multiplier(s, 1));
}

TEST_CASE("penalty force: zero on constraint, hand value, linear in M") {
    PeriodicGrid g({8, 8}, {0.5, 0.5}); // unit volume
    ModelParams p = unit_params(indicator(0.45), 0.4);
    p.penalty_m = 100.0;

    // Constraint satisfied for phase 1: zero force.
    PhaseState sat(ScalarField(g, 0.45), ScalarField(g, 0.5), p);
    CHECK(max_abs(penalty_force(sat, 0)) <= 1e-12);

    // Constant 1/2 against omega = 0.4 with M = 100 on the unit box:
    // 100 * 0.1 * f'(1/2) = 15 everywhere.
    PhaseState s(ScalarField(g, 0.5), ScalarField(g, 0.5), p);
    ScalarField force = penalty_force(s, 1);
    for (std::size_t i = 0; i < force.size(); ++i)
        CHECK(force[i] == doctest::Approx(15.0).epsilon(1e-12));

    ModelParams p2 = p;
    p2.penalty_m = 200.0;
    PhaseState s2(ScalarField(g, 0.5), ScalarField(g, 0.5), p2);
    ScalarField force2 = penalty_force(s2, 1);
    for (std::size_t i = 0; i < force2.size(); ++i)
        CHECK(force2[i] == doctest::Approx(2.0 * force[i]).epsilon(1e-14));
}

TEST_CASE("project_constraint: identity, constructed inverse, near fields") {
    PeriodicGrid g({8, 8}, {0.5, 0.5});

    // Already satisfied: returned bitwise unchanged.
    ScalarField c(g, 0.45);
    ScalarField pc = project_constraint(c, indicator(0.45));
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(pc[i] == c[i]);

    // Constructed inverse problem: recover c0 = 0.01 from a constant 1/2.
    const double c0 = 0.01;
    const double omega = indicator(0.5 + c0 * indicator_deriv(0.5));
    ScalarField half(g, 0.5);
    ScalarField proj = project_constraint(half, omega);
    const double recovered = (proj[0] - 0.5) / indicator_deriv(0.5);
    CHECK(recovered == doctest::Approx(c0).epsilon(1e-10));
    CHECK(std::abs(volume_residual(proj, omega)) <= 1e-12);

    // Random near-constraint field: tiny residual afterwards, bounded move.
    std::mt19937_64 rng(77);
    ScalarField f = random_field(g, rng, 0.25, 0.55);
    const double target = mean(indicator_field(f)) - 1e-3;
    ScalarField pf = project_constraint(f, target);
    CHECK(std::abs(volume_residual(pf, target)) <= 1e-12);
    ScalarField diff = pf;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= f[i];
    CHECK(l2_norm(diff) <= 10.0 * 1e-3);
}

TEST_CASE("project_constraint is idempotent") {
    std::mt19937_64 rng(87);
    PeriodicGrid g({8, 8}, {0.5, 0.5});
    ScalarField f = random_field(g, rng, 0.2, 0.8);
    ScalarField once = project_constraint(f, 0.4);
    ScalarField twice = project_constraint(once, 0.4);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(twice[i] == doctest::Approx(once[i]).epsilon(1e-12));
}

TEST_CASE("project_constraint failure modes") {
    PeriodicGrid g({8, 8}, {0.5, 0.5});
    // Unreachable target within |c| <= 1/2 from a flat low level.
    ScalarField low(g, 0.05);
    CHECK_THROWS_AS(project_constraint(low, 0.95), ProjectionFailed);
    // Degenerate field: f'(phi) = 0 everywhere.
    ScalarField zero(g, 0.0);
    CHECK_THROWS_AS(project_constraint(zero, 0.4), DegenerateConstraint);
}
