#include "bdsg/baselines.hpp"
#include "bdsg/parallel.hpp"
#include "bdsg/bdstep.hpp"
#include "bdsg/experiments.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace bdsg;
namespace tst = bdsg::testing;

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;
} // namespace

TEST_SUITE("baselines") {

TEST_CASE("plane wave picks up the exact kinetic phase") {
    const auto grid = make_grid(0.25, 16);
    std::vector<double> zero(static_cast<std::size_t>(grid->total_points()), 0.0);
    const int xi = 3;
    WaveField psi(grid);
    for (int i = 0; i < grid->total_points(); ++i)
        psi[static_cast<std::size_t>(i)] = std::polar(1.0, xi * grid->x_at(i));

    const double dt = 0.21;
    const auto stepped = ts_step(psi, zero, dt, 0.25);
    const cplx phase = std::polar(1.0, -0.25 * xi * xi * dt / 2.0);
    double worst = 0.0;
    for (int i = 0; i < grid->total_points(); ++i)
        worst = std::max(worst, std::abs(stepped[static_cast<std::size_t>(i)] -
                                         phase * psi[static_cast<std::size_t>(i)]));
    CHECK(worst <= 1e-13);
}

TEST_CASE("ts step basics") {
    const auto grid = make_grid(0.25, 16);
    const auto V = PeriodicPotential::mathieu();
    const auto U = RandomPotential::harmonic_noise();
    const auto pot = total_potential_samples(*grid, V, U, 0.3);
    const auto psi = tst::random_field(grid, 5);

    SUBCASE("dt = 0 is the identity") {
        CHECK(tst::max_abs_diff(ts_step(psi, pot, 0.0, 0.25), psi) <= 1e-13);
    }
    SUBCASE("mass conservation per step") {
        auto state = psi;
        const double n0 = discrete_norm(state);
        for (int n = 0; n < 20; ++n) state = ts_step(state, pot, 0.05, 0.25);
        CHECK(std::abs(discrete_norm(state) - n0) <= 20 * 1e-12);
    }
    SUBCASE("ts_run composes single steps") {
        auto manual = psi;
        for (int n = 0; n < 7; ++n) manual = ts_step(manual, pot, 0.05, 0.25);
        CHECK(tst::max_abs_diff(ts_run(psi, pot, 0.05, 7, 0.25), manual) <= 1e-12);
    }
}

TEST_CASE("classical and Bloch-decomposition solvers agree on a smooth problem") {
    const double eps = 0.25;
    const auto grid = make_grid(eps, 64); // dx = pi/128
    const auto V = PeriodicPotential::mathieu();
    const auto U = RandomPotential::harmonic_noise();
    const auto pot = total_potential_samples(*grid, V, U, 0.0);

    // external-potential-only samples for the Bloch route
    std::vector<double> external(static_cast<std::size_t>(grid->total_points()));
    for (int i = 0; i < grid->total_points(); ++i)
        external[static_cast<std::size_t>(i)] = U(grid->x_at(i), 0.0);

    const auto psi0 = initial_gaussian(grid);
    const double T = 0.5;

    const auto ts = ts_run(psi0, pot, 1e-4, static_cast<int>(T / 1e-4), eps);

    const auto table = compute_lattice_table(V, grid, grid->points_per_cell());
    WaveField bd = psi0;
    const double bd_dt = 1e-2;
    for (int n = 0; n < static_cast<int>(T / bd_dt); ++n)
        bd = bd_step(bd, table, external, bd_dt, eps, Splitting::Strang);

    double den_sq = 0.0;
    for (int i = 0; i < grid->total_points(); ++i) {
        const double d = std::abs(ts[static_cast<std::size_t>(i)]) -
                         std::abs(bd[static_cast<std::size_t>(i)]);
        den_sq += d * d;
    }
    CHECK(std::sqrt(grid->dx() * den_sq) <= 1e-4);
}

TEST_CASE("uniform draws are deterministic and centered") {
    CHECK(uniform_draw(7, 0) == uniform_draw(7, 0));
    CHECK(uniform_draw(7, 0) != uniform_draw(7, 1));
    CHECK(uniform_draw(7, 0) != uniform_draw(8, 0));
    double mean = 0.0;
    for (int k = 0; k < 20000; ++k) {
        const double z = uniform_draw(123, static_cast<std::uint64_t>(k));
        REQUIRE(z >= -1.0);
        REQUIRE(z <= 1.0);
        mean += z;
    }
    CHECK(std::abs(mean / 20000.0) <= 0.02);
}

TEST_CASE("monte carlo statistics") {
    const auto grid = make_grid(0.5, 8);
    const auto psi = initial_gaussian(grid);

    SUBCASE("single realization is returned verbatim") {
        const auto stats = monte_carlo(
            [&](double z) {
                WaveField f = psi;
                for (auto& v : f.values()) v *= std::polar(1.0, z);
                return f;
            },
            1, 99);
        const double z0 = uniform_draw(99, 0);
        double worst = 0.0;
        for (int i = 0; i < grid->total_points(); ++i)
            worst = std::max(worst,
                             std::abs(stats.mean[static_cast<std::size_t>(i)] -
                                      psi[static_cast<std::size_t>(i)] * std::polar(1.0, z0)));
        CHECK(worst <= 1e-15);
    }
    SUBCASE("z-independent solver has zero sampling variance") {
        const auto stats = monte_carlo([&](double) { return psi; }, 64, 1234);
        CHECK(tst::max_abs_diff(stats.mean, psi) <= 1e-14);
        for (int i = 0; i < grid->total_points(); ++i)
            CHECK(stats.density[static_cast<std::size_t>(i)] ==
                  doctest::Approx(std::norm(psi[static_cast<std::size_t>(i)])).epsilon(1e-13));
    }
    SUBCASE("results do not depend on the thread count") {
        auto solver = [&](double z) {
            WaveField f = psi;
            for (auto& v : f.values()) v *= std::polar(1.0, 0.5 * z);
            return f;
        };
        set_max_threads(1);
        const auto serial = monte_carlo(solver, 101, 77);
        set_max_threads(7);
        const auto parallel = monte_carlo(solver, 101, 77);
        set_max_threads(0);
        CHECK(tst::max_abs_diff(serial.mean, parallel.mean) == 0.0);
        for (std::size_t i = 0; i < serial.density.size(); ++i)
            CHECK(serial.density[i] == parallel.density[i]);
    }
}

TEST_CASE("monte carlo error decays like one over sqrt(K)") {
    // classical solver on a coarse grid; the collocation rule with the same
    // solver provides the exact-in-z statistics, isolating sampling error
    const auto grid = make_grid(0.25, 16);
    const auto V = PeriodicPotential::mathieu();
    const auto U = RandomPotential::linear_force();
    const double dt = 0.01;
    const int steps = 20;
    auto solve_at = [&](double z) {
        return ts_run(initial_gaussian(grid), total_potential_samples(*grid, V, U, z), dt, steps,
                      0.25);
    };
    const auto exact = stochastic_collocation(solve_at, 13).stats();

    std::vector<double> ks = {10, 100, 1000};
    std::vector<double> errs;
    for (double k : ks)
        errs.push_back(
            error_metrics(monte_carlo(solve_at, static_cast<int>(k), 46), exact).delta_mean);
    const double slope = log_log_slope(ks, errs);
    CHECK(slope >= -0.7);
    CHECK(slope <= -0.3);
}

TEST_CASE("stochastic collocation") {
    const auto grid = make_grid(0.5, 8);
    const auto psi = initial_gaussian(grid);

    SUBCASE("single node samples the midpoint") {
        auto solver = [&](double z) {
            WaveField f = psi;
            for (auto& v : f.values()) v *= (1.0 + 0.1 * z);
            return f;
        };
        const auto result = stochastic_collocation(solver, 1);
        CHECK(std::abs(result.nodes[0]) <= 1e-15);
        CHECK(tst::max_abs_diff(result.stats().mean, solver(0.0)) <= 1e-14);
    }
    SUBCASE("quadrature saturates once the z-dependence is resolved") {
        auto solver = [&](double z) {
            WaveField f = psi;
            for (auto& v : f.values()) v *= (1.0 + 0.1 * z);
            return f;
        };
        const auto s5 = stochastic_collocation(solver, 5).stats();
        const auto s9 = stochastic_collocation(solver, 9).stats();
        CHECK(tst::max_abs_diff(s5.mean, s9.mean) <= 1e-10);
        for (std::size_t i = 0; i < s5.density.size(); ++i)
            CHECK(std::abs(s5.density[i] - s9.density[i]) <= 1e-10);
    }
    SUBCASE("expectation is exact for polynomial z-dependence") {
        // psi(z) = (1+z)^3 g: E[psi] = 2 g and E[|psi|^2] = (64/7) g^2
        auto solver = [&](double z) {
            WaveField f = psi;
            const double c = std::pow(1.0 + z, 3);
            for (auto& v : f.values()) v *= c;
            return f;
        };
        const auto stats = stochastic_collocation(solver, 4).stats();
        for (int i = 0; i < grid->total_points(); ++i) {
            CHECK(std::abs(stats.mean[static_cast<std::size_t>(i)] -
                           2.0 * psi[static_cast<std::size_t>(i)]) <= 1e-12);
            CHECK(stats.density[static_cast<std::size_t>(i)] ==
                  doctest::Approx(64.0 / 7.0 * std::norm(psi[static_cast<std::size_t>(i)]))
                      .epsilon(1e-12));
        }
    }
    SUBCASE("interpolant reproduces nodes and low-degree polynomials") {
        auto solver = [&](double z) {
            WaveField f = psi;
            for (auto& v : f.values()) v *= (2.0 - 0.7 * z);
            return f;
        };
        const auto result = stochastic_collocation(solver, 3);
        CHECK(tst::max_abs_diff(result.interpolate(result.nodes[1]), result.solutions[1]) == 0.0);
        CHECK(tst::max_abs_diff(result.interpolate(0.37), solver(0.37)) <= 1e-13);
    }
}

} // TEST_SUITE
