#include <cmath>
#include <random>

#include <doctest.h>

#include "ftl/errors.hpp"
#include "ftl/godunov.hpp"
#include "test_util.hpp"

using namespace ftl;

TEST_CASE("interface flux") {
    const auto m = greenshields();
    CHECK(godunov_flux(m, 0.3, 0.3) == doctest::Approx(0.21).epsilon(1e-15));
    CHECK(godunov_flux(m, 0.2, 0.8) == doctest::Approx(0.16).epsilon(1e-15));
    CHECK(godunov_flux(m, 0.8, 0.2) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(godunov_flux(m, -0.1, 0.5), config_error);
    CHECK_THROWS_AS(godunov_flux(m, 0.5, 1.2), config_error);
}

TEST_CASE("interface flux is monotone") {
    // non-decreasing in the left state, non-increasing in the right
    for (const auto& m : {greenshields(), power_law(2.0)}) {
        for (int ia = 0; ia <= 20; ++ia)
            for (int ib = 0; ib <= 20; ++ib) {
                const double a = ia / 20.0, b = ib / 20.0;
                const double g = godunov_flux(m, a, b);
                if (ia < 20)
                    CHECK(godunov_flux(m, a + 0.05, b) >= g - 1e-12);
                if (ib < 20)
                    CHECK(godunov_flux(m, a, b + 0.05) <= g + 1e-12);
            }
    }
}

TEST_CASE("one conservative update") {
    const auto m = greenshields();
    UniformGrid g;
    g.P = 2.0;
    g.m = 2;
    g.avg = {0.2, 0.8};

    SUBCASE("hand-evaluated two-cell step") {
        const auto next = godunov_step(g, m, 0.5);
        CHECK(next.avg[0] == doctest::Approx(0.245).epsilon(1e-14));
        CHECK(next.avg[1] == doctest::Approx(0.755).epsilon(1e-14));
        CHECK(next.avg[0] + next.avg[1] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(next.t == doctest::Approx(0.5));
    }

    SUBCASE("constant grid is a fixed point") {
        UniformGrid c;
        c.P = 2.0;
        c.m = 8;
        c.avg.assign(8, 0.37);
        const auto next = godunov_step(c, m, 0.2);
        for (double a : next.avg) CHECK(a == doctest::Approx(0.37).epsilon(1e-15));
    }

    SUBCASE("CFL guard") {
        CHECK_THROWS_AS(godunov_step(g, m, 1.5), config_error);
    }
}

TEST_CASE("stepping obeys the discrete maximum principle and conserves mass") {
    const auto m = greenshields();
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> dens(0.02, 0.98);
    UniformGrid g;
    g.P = 4.0;
    g.m = 64;
    g.avg.resize(64);
    for (auto& a : g.avg) a = dens(rng);
    const double lo = *std::min_element(g.avg.begin(), g.avg.end());
    const double hi = *std::max_element(g.avg.begin(), g.avg.end());
    const double mass0 = g.mass();
    const double dt = 0.9 * g.h();
    for (int k = 0; k < 100; ++k) {
        g = godunov_step(g, m, dt);
        for (double a : g.avg) {
            CHECK(a >= lo - 1e-13);
            CHECK(a <= hi + 1e-13);
        }
        CHECK(std::abs(g.mass() - mass0) <= 1e-12);
    }
}

TEST_CASE("closed-form Riemann solutions") {
    const auto m = greenshields();
    CHECK(exact_riemann(m, 0.4, 0.4, -0.7) == 0.4);
    CHECK(exact_riemann(m, 1.0, 0.05, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    // stationary shock between 0.2 and 0.8
    CHECK(exact_riemann(m, 0.2, 0.8, -0.1) == 0.2);
    CHECK(exact_riemann(m, 0.2, 0.8, 0.1) == 0.8);
    CHECK_THROWS_AS(exact_riemann(power_law(2.0), 0.2, 0.8, 0.0),
                    unsupported_error);
}

TEST_CASE("solver honours a zero horizon") {
    const auto m = greenshields();
    UniformGrid g;
    g.P = 4.0;
    g.m = 16;
    g.avg.assign(16, 0.3);
    g.avg[3] = 0.9;
    const auto out = godunov_solve(g, m, 0.0);
    CHECK(out.avg == g.avg);
}

TEST_CASE("solver approaches the closed-form solutions") {
    const auto m = greenshields();
    const double P = 4.0, T = 0.5;

    SUBCASE("rarefaction 1 -> 0.05, sonic cell near one half") {
        const auto data = piecewise_profile({0.0, 2.0}, {1.0, 0.05}, P, 0.05);
        const auto sol = godunov_solve(grid_average(data, 1024), m, T, 0.9);
        // the cell straddling the initial jump carries the sonic state
        const std::size_t j = static_cast<std::size_t>(2.0 / sol.h());
        CHECK(std::abs(sol.avg[j] - 0.5) < 0.02);
        CHECK(l1_error_vs_riemann_ring(sol, m, 1.0, 0.05, T) < 0.02);
    }

    SUBCASE("stationary shock 0.2 -> 0.8") {
        const auto data = piecewise_profile({0.0, 2.0}, {0.2, 0.8}, P, 0.2);
        double prev = 1e9;
        for (std::size_t cells : {128u, 256u, 512u}) {
            const auto sol = godunov_solve(grid_average(data, cells), m, T, 0.9);
            const double err = l1_error_vs_riemann_ring(sol, m, 0.2, 0.8, T);
            CHECK(err < prev);
            prev = err;
        }
        CHECK(prev < 0.02);
    }
}

TEST_CASE("kruzkov cell-entropy residual stays nonpositive") {
    const auto m = greenshields();
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> dens(0.05, 0.95);
    UniformGrid g;
    g.P = 4.0;
    g.m = 64;
    g.avg.resize(64);
    for (auto& a : g.avg) a = dens(rng);
    const double dt = 0.9 * g.h();
    for (int k = 0; k < 50; ++k) {
        const auto next = godunov_step(g, m, dt);
        for (double level : {0.25, 0.5, 0.75})
            CHECK(kruzkov_step_residual(g, next, m, dt, level) <= 1e-10);
        g = next;
    }
}

TEST_CASE("ring Riemann helper matches the plain solution away from the wrap") {
    const auto m = greenshields();
    const double P = 4.0, t = 0.5;
    for (double x : {1.2, 1.9, 2.0, 2.4, 2.9}) {
        CHECK(exact_riemann_ring(m, 1.0, 0.05, P, t, x) ==
              doctest::Approx(exact_riemann(m, 1.0, 0.05, (x - 2.0) / t))
                  .epsilon(1e-15));
    }
    // near the wrap the mirrored jump governs: shock of speed -0.05
    CHECK(exact_riemann_ring(m, 1.0, 0.05, P, t, 3.9) == 0.05);
    CHECK(exact_riemann_ring(m, 1.0, 0.05, P, t, 0.05) == 1.0);
}
