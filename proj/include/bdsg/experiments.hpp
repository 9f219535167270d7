#pragma once

#include "bdsg/baselines.hpp"
#include "bdsg/diagnostics.hpp"
#include "bdsg/scenarios.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bdsg {

enum class SweepAxis { Dt, Dx, Gpc, McK, ScN };

SweepAxis sweep_axis_from_name(const std::string& name); // dt|dx|gpc|mc-k|sc-n
std::string_view to_name(SweepAxis axis);

/// Tuning of the reference-solution factory relative to the candidate:
/// a fine-grid collocation run with the classical splitting solver. Zeros
/// mean automatic margins: dt/50 and dx/2 for smooth potentials, dt/800 and
/// dx/4 when the lattice or external potential is discontinuous (the
/// classical solver converges much more slowly there).
struct ReferencePolicy {
    double dt_divisor = 0.0; // reference dt <= candidate dt / divisor
    int dx_factor = 0;       // reference dx <= candidate dx / factor
    int min_nodes = 0;       // 0 -> 2*gpc_order + 5
};

/// Ensemble statistics from the fine collocation run, restricted onto the
/// candidate grid; cached on disk keyed by a hash of all inputs.
SolutionStats reference_stats(const Scenario& scenario, double candidate_dt,
                              int candidate_dx_denominator,
                              const std::filesystem::path& cache_dir,
                              const ReferencePolicy& policy = {});

/// Restriction of fine-grid statistics onto a coarser grid whose points are
/// a subset of the fine ones.
SolutionStats restrict_stats(const SolutionStats& fine, const GridPtr& coarse);

/// Statistics of the stochastic Galerkin solution for a scenario, with
/// optional per-level overrides.
SolutionStats bdsg_stats(const Scenario& scenario, std::optional<double> dt_override = {},
                         std::optional<int> dx_denominator_override = {},
                         std::optional<int> gpc_order_override = {});

/// Statistics of the collocation baseline at the scenario's [methods]
/// discretization.
SolutionStats ts_sc_stats(const Scenario& scenario, int n_nodes);

/// Statistics of the Monte Carlo baseline.
SolutionStats ts_mc_stats(const Scenario& scenario, int realizations);

struct SweepResult {
    SweepAxis axis = SweepAxis::Dt;
    std::vector<double> levels;
    std::vector<ErrorMetrics> errors;
    // log2 error ratios between consecutive levels (empty first entry -> nan)
    std::vector<double> order_mean;
    std::vector<double> order_den;
};

/// Runs one error sweep against the cached reference. Levels come from the
/// scenario's [expect] lists when present, otherwise from defaults (five
/// dt halvings, gPC orders 1..Q, ...).
SweepResult run_sweep(const Scenario& scenario, SweepAxis axis,
                      const std::filesystem::path& cache_dir,
                      const ReferencePolicy& policy = {});

/// Least-squares slope of log(err) vs log(level).
double log_log_slope(const std::vector<double>& levels, const std::vector<double>& errors);

struct CompareRow {
    std::string method;
    ErrorMetrics error;
    double wall_ms = 0.0;
};

/// Runs every method listed in the scenario against one shared reference.
std::vector<CompareRow> compare_methods(const Scenario& scenario,
                                        const std::filesystem::path& cache_dir);

struct ConservationSeries {
    std::vector<double> times;
    std::vector<double> mass;
    std::vector<double> energy;
    std::vector<double> second_moment;
};

/// BD-SG run recording mass, energy, and second moment per snapshot.
ConservationSeries conservation_run(const Scenario& scenario);

struct LocalizationResult {
    std::vector<double> sigmas;
    std::vector<double> times;
    std::vector<std::vector<double>> moments;        // per sigma, per time
    std::vector<std::vector<double>> final_density;  // per sigma, on the grid
    std::vector<std::vector<double>> coefficient_norms; // per sigma, per order
    std::vector<double> late_slopes; // dS/dt fitted over the last third of [0,T]
};

LocalizationResult localization(const Scenario& scenario, const std::vector<double>& sigmas);

} // namespace bdsg
