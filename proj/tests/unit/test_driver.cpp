#include "bdsg/driver.hpp"
#include "bdsg/diagnostics.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace bdsg;
namespace tst = bdsg::testing;

namespace {
double state_diff(const GpcState& a, const GpcState& b) {
    double worst = 0.0;
    for (std::size_t p = 0; p < a.coeffs.size(); ++p)
        worst = std::max(worst, tst::max_abs_diff(a.coeffs[p], b.coeffs[p]));
    return worst;
}

RunSpec small_spec() {
    RunSpec spec;
    spec.grid = make_grid(0.25, 16);
    spec.lattice_potential = PeriodicPotential::mathieu();
    spec.random_potential = RandomPotential::harmonic_noise();
    spec.final_time = 0.5;
    spec.dt = 0.05;
    spec.gpc_order = 3;
    return spec;
}
} // namespace

TEST_SUITE("driver") {

TEST_CASE("zero-order scheme with a deterministic potential reduces to the scalar step") {
    RunSpec spec = small_spec();
    spec.gpc_order = 0;
    spec.random_potential =
        RandomPotential::custom([](double x, double) { return 0.3 * x * x; });
    const BdsgOperators ops = prepare(spec);

    std::vector<double> pot(static_cast<std::size_t>(spec.grid->total_points()));
    for (int i = 0; i < spec.grid->total_points(); ++i)
        pot[static_cast<std::size_t>(i)] = 0.3 * spec.grid->x_at(i) * spec.grid->x_at(i);

    const auto psi = initial_gaussian(spec.grid);
    GpcState state = deterministic_state(psi, 1);
    state = bdsg_step(state, ops.table, ops.coupling, spec.dt, 0.25);
    const auto direct = bd_step(psi, ops.table, pot, spec.dt, 0.25, Splitting::Strang);
    CHECK(tst::max_abs_diff(state.coeffs[0], direct) <= 1e-12);
}

TEST_CASE("step round trip") {
    const RunSpec spec = small_spec();
    const BdsgOperators ops = prepare(spec);
    GpcState state = initial_state(spec);
    const GpcState saved = state;
    state = bdsg_step(state, ops.table, ops.coupling, spec.dt, 0.25);
    state = bdsg_step(state, ops.table, ops.coupling, -spec.dt, 0.25);
    CHECK(state_diff(state, saved) <= 1e-9);
}

TEST_CASE("Strang step equals opposite-order half steps") {
    const RunSpec spec = small_spec();
    const BdsgOperators ops = prepare(spec);
    const GpcState state = initial_state(spec);

    const GpcState strang = bdsg_step(state, ops.table, ops.coupling, spec.dt, 0.25);
    GpcState composed = bdsg_step(state, ops.table, ops.coupling, 0.5 * spec.dt, 0.25,
                                  Splitting::PotentialThenLattice);
    composed = bdsg_step(composed, ops.table, ops.coupling, 0.5 * spec.dt, 0.25,
                         Splitting::LatticeThenPotential);
    CHECK(state_diff(strang, composed) <= 1e-12);
}

TEST_CASE("mass is conserved over many steps") {
    RunSpec spec = small_spec();
    spec.gpc_order = 4;
    spec.final_time = 2.0;
    spec.dt = 0.02; // 100 steps
    const BdsgOperators ops = prepare(spec);
    GpcState state = initial_state(spec);
    const double m0 = total_mass(state);
    double worst = 0.0;
    run(spec, ops, std::move(state), [&](int, double, const GpcState& s) {
        worst = std::max(worst, std::abs(total_mass(s) / m0 - 1.0));
    });
    CHECK(worst <= 1e-9);
}

TEST_CASE("zero-randomness reduction") {
    RunSpec spec = small_spec();
    spec.gpc_order = 4;
    spec.random_potential =
        RandomPotential::custom([](double x, double) { return 0.5 * x; });
    spec.final_time = 0.4;
    spec.dt = 0.02; // 20 steps
    const BdsgOperators ops = prepare(spec);

    const GpcState final_state = run(spec, ops, initial_state(spec));
    for (int p = 1; p <= spec.gpc_order; ++p)
        CHECK(discrete_norm(final_state.coeffs[static_cast<std::size_t>(p)]) <= 1e-13);

    std::vector<double> pot(static_cast<std::size_t>(spec.grid->total_points()));
    for (int i = 0; i < spec.grid->total_points(); ++i)
        pot[static_cast<std::size_t>(i)] = 0.5 * spec.grid->x_at(i);
    WaveField direct = initial_gaussian(spec.grid);
    for (int n = 0; n < 20; ++n)
        direct = bd_step(direct, ops.table, pot, spec.dt, 0.25, Splitting::Strang);
    CHECK(tst::max_abs_diff(final_state.coeffs[0], direct) <= 1e-12);
}

TEST_CASE("run bookkeeping") {
    RunSpec spec = small_spec();

    SUBCASE("zero steps returns the initial state") {
        spec.final_time = 0.0;
        const BdsgOperators ops = prepare(spec);
        const auto snapshots = run_collect(spec, ops, initial_state(spec));
        REQUIRE(snapshots.size() == 1);
        CHECK(state_diff(snapshots.front(), initial_state(spec)) == 0.0);
    }
    SUBCASE("non-integer step counts are rejected") {
        spec.final_time = 0.5;
        spec.dt = 0.15;
        CHECK_THROWS_AS(run(spec, initial_state(spec)), std::invalid_argument);
    }
    SUBCASE("snapshot stride") {
        spec.final_time = 0.5;
        spec.dt = 0.05;
        spec.snapshot_stride = 4;
        const BdsgOperators ops = prepare(spec);
        std::vector<int> steps;
        run(spec, ops, initial_state(spec),
            [&](int n, double, const GpcState&) { steps.push_back(n); });
        CHECK(steps == std::vector<int>{0, 4, 8, 10});
    }
    SUBCASE("snapshots are deep copies") {
        spec.final_time = 0.1;
        spec.dt = 0.05;
        const BdsgOperators ops = prepare(spec);
        const auto snapshots = run_collect(spec, ops, initial_state(spec));
        REQUIRE(snapshots.size() == 3);
        CHECK(state_diff(snapshots[0], snapshots[2]) > 1e-6);
    }
}

TEST_CASE("first-order and Strang splittings converge at their orders") {
    // temporal self-convergence against a fine-dt run of the same scheme
    RunSpec spec = small_spec();
    spec.gpc_order = 2;
    spec.final_time = 0.4;
    const BdsgOperators ops = prepare(spec);
    const GpcState init = initial_state(spec);

    auto solve = [&](double dt, Splitting splitting) {
        RunSpec s = spec;
        s.dt = dt;
        s.splitting = splitting;
        return run(s, ops, init);
    };
    const GpcState fine = solve(0.4 / 512.0, Splitting::Strang);

    auto error_at = [&](double dt, Splitting splitting) {
        const GpcState coarse = solve(dt, splitting);
        return error_metrics(stats_from(coarse), stats_from(fine)).delta_mean;
    };

    const double s1 = error_at(0.1, Splitting::Strang);
    const double s2 = error_at(0.05, Splitting::Strang);
    const double s4 = error_at(0.025, Splitting::Strang);
    CHECK(std::log2(s1 / s2) == doctest::Approx(2.0).epsilon(0.25));
    CHECK(std::log2(s2 / s4) == doctest::Approx(2.0).epsilon(0.25));

    const double f1 = error_at(0.1, Splitting::LatticeThenPotential);
    const double f2 = error_at(0.05, Splitting::LatticeThenPotential);
    CHECK(std::log2(f1 / f2) == doctest::Approx(1.0).epsilon(0.35));
}

} // TEST_SUITE
