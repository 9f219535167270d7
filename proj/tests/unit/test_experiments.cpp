#include "bdsg/errors.hpp"
#include "bdsg/experiments.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>

using namespace bdsg;

namespace {
// small scenario for fast end-to-end checks
Scenario tiny_scenario() {
    Scenario sc;
    sc.name = "tiny";
    sc.lattice = LatticeForm::Mathieu;
    sc.random = RandomForm::HarmonicNoise;
    sc.epsilon = 0.25;
    sc.dx_denominator = 32; // 16 points per cell
    sc.final_time = 0.2;
    sc.dt = 0.05;
    sc.gpc_order = 2;
    sc.mc_realizations = 50;
    sc.sc_nodes = 5;
    return sc;
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const char* name)
        : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};
} // namespace

TEST_SUITE("experiments") {

TEST_CASE("restriction subsamples a refined grid") {
    const auto sc = tiny_scenario();
    const GridPtr fine = sc.build_grid(64);
    const GridPtr coarse = sc.build_grid(32);

    WaveField mean(fine);
    std::vector<double> density(static_cast<std::size_t>(fine->total_points()));
    for (int i = 0; i < fine->total_points(); ++i) {
        mean[static_cast<std::size_t>(i)] = {static_cast<double>(i), 0.0};
        density[static_cast<std::size_t>(i)] = 10.0 * i;
    }
    const SolutionStats fine_stats{fine, std::move(mean), std::move(density)};
    const SolutionStats coarse_stats = restrict_stats(fine_stats, coarse);
    REQUIRE(coarse_stats.density.size() == static_cast<std::size_t>(coarse->total_points()));
    for (int i = 0; i < coarse->total_points(); ++i) {
        CHECK(coarse_stats.mean[static_cast<std::size_t>(i)].real() == 2.0 * i);
        CHECK(coarse_stats.density[static_cast<std::size_t>(i)] == 20.0 * i);
        CHECK(coarse->x_at(i) == doctest::Approx(fine->x_at(2 * i)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(restrict_stats(coarse_stats, fine), GridMismatch);
}

TEST_CASE("reference statistics are cached on disk") {
    const auto sc = tiny_scenario();
    TempDir cache("bdsg_ref_cache_test");

    const SolutionStats first = reference_stats(sc, sc.dt, sc.dx_denominator, cache.path);
    bool found = false;
    for (const auto& entry : std::filesystem::directory_iterator(cache.path))
        if (entry.path().filename().string().starts_with("ref_")) found = true;
    CHECK(found);

    const SolutionStats second = reference_stats(sc, sc.dt, sc.dx_denominator, cache.path);
    CHECK(bdsg::testing::max_abs_diff(first.mean, second.mean) == 0.0);
    CHECK(first.density == second.density);
}

TEST_CASE("dt sweep shows second-order decay on the tiny scenario") {
    auto sc = tiny_scenario();
    sc.expect["dt_levels"] = {0.1, 0.05, 0.025};
    TempDir cache("bdsg_sweep_cache_test");
    const SweepResult result = run_sweep(sc, SweepAxis::Dt, cache.path);
    REQUIRE(result.errors.size() == 3);
    CHECK(result.errors[0].delta_mean > result.errors[1].delta_mean);
    CHECK(result.errors[1].delta_mean > result.errors[2].delta_mean);
    CHECK(result.order_mean[1] == doctest::Approx(2.0).epsilon(0.3));
    CHECK(result.order_mean[2] == doctest::Approx(2.0).epsilon(0.3));
}

TEST_CASE("reported errors are stable under reference refinement") {
    auto sc = tiny_scenario();
    TempDir cache("bdsg_refine_cache_test");

    const SolutionStats ref = reference_stats(sc, sc.dt, sc.dx_denominator, cache.path);
    ReferencePolicy finer;
    finer.dt_divisor = 100.0;
    finer.dx_factor = 4;
    const SolutionStats ref2 = reference_stats(sc, sc.dt, sc.dx_denominator, cache.path, finer);

    const SolutionStats cand = bdsg_stats(sc);
    const ErrorMetrics e1 = error_metrics(cand, ref);
    const ErrorMetrics e2 = error_metrics(cand, ref2);
    CHECK(std::abs(e2.delta_mean / e1.delta_mean - 1.0) < 0.05);
    CHECK(std::abs(e2.delta_den / e1.delta_den - 1.0) < 0.05);
}

TEST_CASE("gpc sweep errors saturate") {
    auto sc = tiny_scenario();
    sc.expect["q_levels"] = {1, 2, 3, 4};
    TempDir cache("bdsg_gpc_cache_test");
    const SweepResult result = run_sweep(sc, SweepAxis::Gpc, cache.path);
    REQUIRE(result.errors.size() == 4);
    // once saturated, error stops improving; no level should be much worse
    for (std::size_t i = 1; i < result.errors.size(); ++i)
        CHECK(result.errors[i].delta_mean <= result.errors[i - 1].delta_mean * 1.5 + 1e-12);
}

TEST_CASE("method comparison produces one row per method") {
    auto sc = tiny_scenario();
    sc.methods = {"bdsg", "ts-sc", "ts-mc"};
    TempDir cache("bdsg_compare_cache_test");
    const auto rows = compare_methods(sc, cache.path);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].method == "bdsg");
    for (const auto& row : rows) {
        CHECK(std::isfinite(row.error.delta_mean));
        CHECK(row.error.delta_mean < 0.5);
        CHECK(row.wall_ms >= 0.0);
    }
    // the Galerkin route should not lose to Monte Carlo at 50 realizations
    CHECK(rows[0].error.delta_mean < rows[2].error.delta_mean);
}

TEST_CASE("conservation series tracks every snapshot") {
    auto sc = tiny_scenario();
    sc.final_time = 0.3;
    sc.dt = 0.05;
    const ConservationSeries series = conservation_run(sc);
    REQUIRE(series.times.size() == 7);
    CHECK(series.times.front() == 0.0);
    CHECK(series.times.back() == doctest::Approx(0.3).epsilon(1e-12));
    for (double m : series.mass) CHECK(std::abs(m / series.mass.front() - 1.0) <= 1e-10);
    for (double h : series.energy)
        CHECK(std::abs(h / series.energy.front() - 1.0) <= 5e-2);
}

TEST_CASE("localization runs per disorder strength") {
    Scenario sc = tiny_scenario();
    sc.lattice = LatticeForm::WeakMathieu;
    sc.random = RandomForm::AndersonCosine;
    sc.gpc_order = 4;
    sc.final_time = 0.3;
    sc.dt = 0.05;
    const LocalizationResult result = localization(sc, {0.0, 5.0});
    REQUIRE(result.moments.size() == 2);
    REQUIRE(result.times.size() == 7);
    CHECK(result.final_density.size() == 2);
    CHECK(result.coefficient_norms[0].size() == 5);
    CHECK(result.late_slopes.size() == 2);
    // sigma = 0 run is deterministic: higher coefficients stay empty
    for (std::size_t p = 1; p < result.coefficient_norms[0].size(); ++p)
        CHECK(result.coefficient_norms[0][p] <= 1e-12);
}

TEST_CASE("axis names round trip") {
    for (const char* name : {"dt", "dx", "gpc", "mc-k", "sc-n"})
        CHECK(to_name(sweep_axis_from_name(name)) == name);
    CHECK_THROWS_AS(sweep_axis_from_name("bogus"), ScenarioError);
}

} // TEST_SUITE
