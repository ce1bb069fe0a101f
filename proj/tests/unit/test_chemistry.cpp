// test_chemistry.cpp
// Pointwise chemistry values, derivative consistency, and the field-level
// constraint quantities against direct quadrature.

#include "doctest.h"

#include <cmath>
#include <random>

#include "acon/chemistry.hpp"
#include "acon/spectral.hpp"
#include "oracles.hpp"

using namespace acon;

TEST_CASE("double well: wells, symmetry point, hand values") {
    CHECK(well(0.0) == 0.0);
    CHECK(well(1.0) == 0.0);
    CHECK(well(0.5) == doctest::Approx(9.0 / 8.0).epsilon(1e-15));
    CHECK(well_deriv(0.5) == 0.0);
    // 36 (s^2 - s)(2s - 1) at s = 1/3: 36 * (-2/9) * (-1/3) = 8/3.
    CHECK(well_deriv(1.0 / 3.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("triple well: the three pure-phase minima and the center") {
    CHECK(triple_well(1.0, 0.0) == 0.0);
    CHECK(triple_well(0.0, 1.0) == 0.0);
    CHECK(triple_well(0.0, 0.0) == 0.0);
    // 3 W(1/3) = 3 * 8/9 = 8/3.
    CHECK(triple_well(1.0 / 3.0, 1.0 / 3.0) ==
          doctest::Approx(8.0 / 3.0).epsilon(1e-14));
    CHECK(triple_well_partial(0, 1.0 / 3.0, 1.0 / 3.0) ==
          doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("indicator: endpoints, midpoint, hand value") {
    CHECK(indicator(0.0) == 0.0);
    CHECK(indicator(1.0) == 1.0);
    CHECK(indicator_deriv(0.0) == 0.0);
    CHECK(indicator_deriv(1.0) == 0.0);
    CHECK(indicator(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(indicator_deriv(0.5) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(indicator(1.0 / 3.0) == doctest::Approx(7.0 / 27.0).epsilon(1e-15));
}

TEST_CASE("property: nonnegativity and monotone indicator") {
    for (int i = 0; i <= 300; ++i) {
        const double s = -1.0 + 3.0 * i / 300.0;
        CHECK(well(s) >= 0.0);
    }
    for (int i = 0; i <= 60; ++i) {
        for (int j = 0; j <= 60; ++j) {
            const double p1 = -0.5 + 2.0 * i / 60.0;
            const double p2 = -0.5 + 2.0 * j / 60.0;
            CHECK(triple_well(p1, p2) >= 0.0);
        }
    }
    double prev = indicator(0.0);
    for (int i = 1; i <= 100; ++i) {
        const double s = static_cast<double>(i) / 100.0;
        const double v = indicator(s);
        CHECK(v >= prev);
        CHECK(indicator_deriv(s) >= 0.0);
        prev = v;
    }
    CHECK(prev == 1.0);
}

TEST_CASE("finite differences validate every hand-coded derivative") {
    // Central differences of the quartic well have the exact error
    // W'''(s) h^2 / 6 with W''' = 36 (12 s - 6), up to 648 on [-1, 2]; the
    // bound below is that constant with margin. The cubic indicator family
    // and the symmetric second derivative are an order tighter.
    const double h = 1e-4;
    const double well_tol = 120.0 * h * h;
    const double f_tol = 10.0 * h * h;
    for (int i = 0; i <= 60; ++i) {
        const double s = -1.0 + 3.0 * i / 60.0;
        const double wd = (well(s + h) - well(s - h)) / (2.0 * h);
        CHECK(std::abs(well_deriv(s) - wd) <= well_tol);

        const double fd = (indicator(s + h) - indicator(s - h)) / (2.0 * h);
        CHECK(std::abs(indicator_deriv(s) - fd) <= f_tol);

        const double fdd =
            (indicator_deriv(s + h) - indicator_deriv(s - h)) / (2.0 * h);
        CHECK(std::abs(indicator_deriv2(s) - fdd) <= f_tol);
    }
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const double p1 = -1.0 + 3.0 * i / 20.0;
            const double p2 = -1.0 + 3.0 * j / 20.0;
            const double d1 =
                (triple_well(p1 + h, p2) - triple_well(p1 - h, p2)) / (2.0 * h);
            const double d2 =
                (triple_well(p1, p2 + h) - triple_well(p1, p2 - h)) / (2.0 * h);
            // Third partials stack W''' of both arguments: wider interval,
            // wider constant.
            CHECK(std::abs(triple_well_partial(0, p1, p2) - d1) <= 400.0 * h * h);
            CHECK(std::abs(triple_well_partial(1, p1, p2) - d2) <= 400.0 * h * h);
        }
    }
}

TEST_CASE("ModelParams validation") {
    ModelParams p;
    p.epsilon = 1.0;
    p.gamma = {{{2.0, 0.5}, {0.5, 2.0}}};
    p.omega = {0.3, 0.4};
    CHECK_NOTHROW(p.validate());

    ModelParams bad = p;
    bad.epsilon = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = p;
    bad.gamma[0][1] = 0.25; // asymmetric
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = p;
    bad.gamma = {{{1.0, 2.0}, {2.0, 1.0}}}; // indefinite
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = p;
    bad.omega = {0.0, 0.4};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.omega = {0.3, 1.0};
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = p;
    bad.penalty_m = -5.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("volume_residual: constants and quadrature oracle") {
    PeriodicGrid g({8, 8}, {0.5, 0.5});
    // f(1/3) = 7/27 exactly.
    CHECK(std::abs(volume_residual(ScalarField(g, 1.0 / 3.0), 7.0 / 27.0)) <=
          1e-15);
    CHECK(volume_residual(ScalarField(g, 0.0), 0.3) ==
          doctest::Approx(-0.3).epsilon(1e-15));

    std::mt19937_64 rng(91);
    ScalarField f = test::random_field(g, rng, -0.2, 1.2);
    double direct = 0.0;
    for (double v : f.values()) direct += 3.0 * v * v - 2.0 * v * v * v;
    direct = direct * g.cell_volume() / g.total_volume() - 0.37;
    CHECK(volume_residual(f, 0.37) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("indicator_deriv_norm_sq: constants and quadrature oracle") {
    PeriodicGrid g({8, 8}, {0.5, 0.5}); // unit volume
    CHECK(indicator_deriv_norm_sq(ScalarField(g, 0.0)) == 0.0);
    CHECK(indicator_deriv_norm_sq(ScalarField(g, 0.5)) ==
          doctest::Approx(2.25).epsilon(1e-14));

    std::mt19937_64 rng(101);
    ScalarField f = test::random_field(g, rng, -0.2, 1.2);
    double direct = 0.0;
    for (double v : f.values()) {
        const double d = 6.0 * v - 6.0 * v * v;
        direct += d * d;
    }
    direct *= g.cell_volume();
    CHECK(indicator_deriv_norm_sq(f) == doctest::Approx(direct).epsilon(1e-12));
}
