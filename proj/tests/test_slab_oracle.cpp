#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "slabdtn/slab_oracle.hpp"

using namespace slabdtn;
using namespace slabdtn::slab_oracle;

TEST_CASE("solve_mode: r = 0 gives the constant extension with zero flux") {
    const auto sol = solve_mode(ModeProblem::standard(FracParams::from_s(0.3), 0.0, 64));
    CHECK(sol.dtn_value == 0.0);
    for (double v : sol.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("solve_mode: recovers tanh at s = 1/2") {
    const auto sol = solve_mode(ModeProblem::standard(FracParams::from_s(0.5), 1.0, 4096));
    CHECK(sol.dtn_value == doctest::Approx(std::tanh(1.0)).epsilon(1e-6));
}

TEST_CASE("solve_mode: agrees with the Bessel symbol away from s = 1/2") {
    const FracParams p = FracParams::from_s(0.25);
    const auto sol = solve_mode(ModeProblem::standard(p, 2.0, 4096));
    CHECK(sol.dtn_value == doctest::Approx(s_full(p, 2.0)).epsilon(1e-5));
}

TEST_CASE("solve_mode: discrete maximum principle") {
    for (double s : {0.25, 0.5, 0.75}) {
        const auto sol =
            solve_mode(ModeProblem::standard(FracParams::from_s(s), 5.0, 512));
        for (double v : sol.values) {
            CHECK(v > 0.0);
            CHECK(v <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("solve_mode: dtn increases with the frequency") {
    const FracParams p = FracParams::from_s(0.75);
    double prev = -1.0;
    for (double r : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        const auto sol = solve_mode(ModeProblem::standard(p, r, 512));
        CHECK(sol.dtn_value > prev);
        prev = sol.dtn_value;
    }
}

TEST_CASE("solve_mode: validation") {
    const FracParams p = FracParams::from_s(0.5);
    CHECK_THROWS_AS(solve_mode(ModeProblem{p, 1.0, 8, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(solve_mode(ModeProblem{p, 1.0, 64, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(solve_mode(ModeProblem{p, -1.0, 64, 2.0}), std::invalid_argument);
}

TEST_CASE("convergence_study: monotone decay, zero error at r = 0") {
    const int meshes[] = {64, 256, 1024, 4096};
    const auto rows = convergence_study(FracParams::from_s(0.5), 1.0, meshes);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].error_vs_symbol < rows[i - 1].error_vs_symbol);

    // doubling the mesh cuts the error by at least 2.8 (order ~2)
    const int doubling[] = {512, 1024, 2048, 4096};
    for (double s : {0.25, 0.5, 0.75}) {
        const auto d = convergence_study(FracParams::from_s(s), 1.0, doubling);
        CHECK(d[3].error_vs_symbol * 2.8 <= d[2].error_vs_symbol);
    }

    const auto zero = convergence_study(FracParams::from_s(0.5), 0.0, meshes);
    for (const auto& row : zero) CHECK(row.error_vs_symbol <= 1e-13);
}

TEST_CASE("solve_mode: zero-flux balance at the lid holds to rounding") {
    const FracParams p = FracParams::from_s(0.25);
    const ModeProblem prob = ModeProblem::standard(p, 3.0, 256);
    const auto sol = solve_mode(prob);
    // re-assemble the last equation: with the natural boundary condition the
    // weighted flux above the last node is exactly zero, so the interior flux
    // must balance the mass term
    const int m = prob.mesh_size;
    const double a = p.a();
    std::vector<double> y(m + 1);
    for (int j = 0; j <= m; ++j) y[j] = std::pow(double(j) / m, prob.grading);
    const double zl = std::pow(y[m - 1], 1.0 - a), zr = 1.0;
    const double c = (1.0 - a) / (zr - zl);
    const double a0 = (1.0 - std::pow(y[m - 1], 1.0 + a)) / (1.0 + a);
    const double i2 = 0.5 * (1.0 - y[m - 1] * y[m - 1]);
    const double g = (1.0 - std::pow(y[m - 1], 3.0 - a)) / (3.0 - a);
    const double d2 = (zr - zl) * (zr - zl);
    const double mrr = (g - 2.0 * zl * i2 + zl * zl * a0) / d2;
    const double mlr = ((zr + zl) * i2 - zr * zl * a0 - g) / d2;
    const double vm = sol.values[m], vl = sol.values[m - 1];
    const double residual =
        c * (vm - vl) + 9.0 * (mlr * vl + mrr * vm);  // r^2 = 9
    CHECK(std::abs(residual) <= 1e-10 * (c * std::abs(vm - vl) + 9.0 * mrr));
}

TEST_CASE("extension_field: mode energy converges to S_s(r) amp^2 / 2") {
    const FracParams p = FracParams::from_s(0.5);
    const ModeAmplitude one[] = {{1.0, 1.0}};
    const double target = 0.5 * std::tanh(1.0);
    const double coarse = extension_field(p, one, 256).mode_energy[0];
    const double fine = extension_field(p, one, 4096).mode_energy[0];
    CHECK(std::abs(fine - target) < std::abs(coarse - target));
    CHECK(fine == doctest::Approx(target).epsilon(1e-5));

    // same identity at a fractional parameter, against the Bessel symbol
    const FracParams frac = FracParams::from_s(0.3);
    const ModeAmplitude mode2[] = {{2.0, 1.5}};
    CHECK(extension_field(frac, mode2, 4096).mode_energy[0] ==
          doctest::Approx(0.5 * s_full(frac, 2.0) * 1.5 * 1.5).epsilon(1e-5));

    const ModeAmplitude zero[] = {{2.0, 0.0}};
    const auto z = extension_field(p, zero, 64);
    CHECK(z.mode_energy[0] == 0.0);
    for (double v : z.values[0]) CHECK(v == 0.0);

    // quadratic in the amplitude, additive across modes
    const ModeAmplitude pair[] = {{1.0, 2.0}, {3.0, 1.0}};
    const auto both = extension_field(p, pair, 256);
    const ModeAmplitude m1[] = {{1.0, 2.0}};
    const ModeAmplitude m2[] = {{3.0, 1.0}};
    CHECK(both.mode_energy[0] ==
          doctest::Approx(extension_field(p, m1, 256).mode_energy[0]).epsilon(1e-14));
    CHECK(both.mode_energy[1] ==
          doctest::Approx(extension_field(p, m2, 256).mode_energy[0]).epsilon(1e-14));
    CHECK(both.mode_energy[0] ==
          doctest::Approx(4.0 * extension_field(p, one, 256).mode_energy[0])
              .epsilon(1e-12));
}
