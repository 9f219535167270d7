#include "bdsg/experiments.hpp"

#include "bdsg/errors.hpp"
#include "bdsg/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace bdsg {

namespace {
using cplx = std::complex<double>;

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

int ts_steps(double final_time, double dt) {
    const long long n = std::llround(final_time / dt);
    if (n < 1 || std::abs(final_time / dt - static_cast<double>(n)) > 1e-9)
        throw ScenarioError("final_time/dt is not an integer step count");
    return static_cast<int>(n);
}

/// Classical-splitting solve at a fixed sample z.
WaveField ts_solve_at(const Scenario& scenario, const GridPtr& grid, double dt, double z) {
    const auto V = scenario.lattice_potential();
    const auto U = scenario.random_potential();
    const auto samples = total_potential_samples(*grid, V, U, z);
    return ts_run(initial_gaussian(grid), samples, dt, ts_steps(scenario.final_time, dt),
                  grid->epsilon());
}
} // namespace

SweepAxis sweep_axis_from_name(const std::string& name) {
    if (name == "dt") return SweepAxis::Dt;
    if (name == "dx") return SweepAxis::Dx;
    if (name == "gpc") return SweepAxis::Gpc;
    if (name == "mc-k") return SweepAxis::McK;
    if (name == "sc-n") return SweepAxis::ScN;
    throw ScenarioError("unknown sweep axis: " + name);
}

std::string_view to_name(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::Dt: return "dt";
    case SweepAxis::Dx: return "dx";
    case SweepAxis::Gpc: return "gpc";
    case SweepAxis::McK: return "mc-k";
    case SweepAxis::ScN: return "sc-n";
    }
    return "dt";
}

SolutionStats restrict_stats(const SolutionStats& fine, const GridPtr& coarse) {
    const Grid& fg = *fine.grid;
    const int nf = fg.total_points();
    const int nc = coarse->total_points();
    if (fg.epsilon() != coarse->epsilon() || nf % nc != 0)
        throw GridMismatch("fine grid is not a refinement of the coarse grid");
    const int stride = nf / nc;

    std::vector<cplx> mean(static_cast<std::size_t>(nc));
    std::vector<double> density(static_cast<std::size_t>(nc));
    auto fv = fine.mean.values();
    for (int i = 0; i < nc; ++i) {
        mean[static_cast<std::size_t>(i)] = fv[static_cast<std::size_t>(i) * stride];
        density[static_cast<std::size_t>(i)] = fine.density[static_cast<std::size_t>(i) * stride];
    }
    return SolutionStats{coarse, WaveField(coarse, std::move(mean)), std::move(density)};
}

SolutionStats reference_stats(const Scenario& scenario, double candidate_dt,
                              int candidate_dx_denominator,
                              const std::filesystem::path& cache_dir,
                              const ReferencePolicy& policy) {
    const bool nonsmooth = scenario.lattice == LatticeForm::KronigPenney ||
                           scenario.random == RandomForm::StepDecay;
    const double dt_divisor =
        policy.dt_divisor > 0.0 ? policy.dt_divisor : (nonsmooth ? 800.0 : 50.0);
    const int dx_factor = policy.dx_factor > 0 ? policy.dx_factor : (nonsmooth ? 4 : 2);

    const int nodes = policy.min_nodes > 0 ? policy.min_nodes : 2 * scenario.gpc_order + 5;
    const int ref_denominator = candidate_dx_denominator * dx_factor;
    const int candidate_steps = ts_steps(scenario.final_time, candidate_dt);
    const int ref_steps = candidate_steps * static_cast<int>(std::ceil(dt_divisor));
    const double ref_dt = scenario.final_time / ref_steps;

    const GridPtr fine_grid = scenario.build_grid(ref_denominator);

    // cache key: everything the reference depends on
    std::ostringstream key;
    key << to_name(scenario.lattice) << '|' << to_name(scenario.random) << '|'
        << format_g17(scenario.sigma) << '|' << format_g17(scenario.epsilon) << '|'
        << format_g17(scenario.final_time) << '|' << format_g17(ref_dt) << '|'
        << ref_denominator << '|' << nodes << "|gaussian";
    const std::string hash = fnv1a_hex(key.str());

    std::filesystem::create_directories(cache_dir);
    const auto path = cache_dir / ("ref_" + hash + ".bin");
    if (std::filesystem::exists(path)) {
        const ArrayFile file = ArrayFile::load(path);
        if (file.header.value("kind", "") == "reference_stats" &&
            file.header.value("key", "") == key.str()) {
            const auto& mean = file.complex_arrays.at("mean");
            const auto& density = file.real_arrays.at("mean_density");
            if (mean.size() == static_cast<std::size_t>(fine_grid->total_points())) {
                SolutionStats fine{fine_grid, WaveField(fine_grid, mean),
                                   std::vector<double>(density)};
                return restrict_stats(fine, scenario.build_grid(candidate_dx_denominator));
            }
        }
    }

    const auto collocation = stochastic_collocation(
        [&](double z) { return ts_solve_at(scenario, fine_grid, ref_dt, z); }, nodes);
    const SolutionStats fine = collocation.stats();

    ArrayFile file;
    file.header = {{"format_version", 1},
                   {"kind", "reference_stats"},
                   {"key", key.str()},
                   {"epsilon", fine_grid->epsilon()},
                   {"cells", fine_grid->cells()},
                   {"points_per_cell", fine_grid->points_per_cell()},
                   {"nodes", nodes},
                   {"dt", ref_dt}};
    file.add_complex("mean", {fine.mean.values().begin(), fine.mean.values().end()});
    file.add_real("mean_density", fine.density);
    file.save(path);

    return restrict_stats(fine, scenario.build_grid(candidate_dx_denominator));
}

SolutionStats bdsg_stats(const Scenario& scenario, std::optional<double> dt_override,
                         std::optional<int> dx_denominator_override,
                         std::optional<int> gpc_order_override) {
    Scenario sc = scenario;
    if (dt_override) sc.dt = *dt_override;
    if (dx_denominator_override) sc.dx_denominator = *dx_denominator_override;
    if (gpc_order_override) sc.gpc_order = *gpc_order_override;
    RunSpec spec = sc.to_runspec();
    const GpcState final = run(spec, initial_state(spec));
    return stats_from(final);
}

SolutionStats ts_sc_stats(const Scenario& scenario, int n_nodes) {
    const double dt = scenario.sc_dt > 0.0 ? scenario.sc_dt : scenario.dt;
    const int denom = scenario.sc_dx_denominator > 0 ? scenario.sc_dx_denominator
                                                     : scenario.dx_denominator;
    const GridPtr grid = scenario.build_grid(denom);
    const auto collocation = stochastic_collocation(
        [&](double z) { return ts_solve_at(scenario, grid, dt, z); }, n_nodes);
    return collocation.stats();
}

SolutionStats ts_mc_stats(const Scenario& scenario, int realizations) {
    const GridPtr grid = scenario.build_grid();
    return monte_carlo(
        [&](double z) { return ts_solve_at(scenario, grid, scenario.dt, z); }, realizations,
        scenario.mc_seed);
}

namespace {
std::vector<double> levels_or_default(const Scenario& sc, const char* key,
                                      std::vector<double> fallback) {
    if (auto it = sc.expect.find(key); it != sc.expect.end() && !it->second.empty())
        return it->second;
    return fallback;
}

void append_orders(SweepResult& result) {
    result.order_mean.assign(result.errors.size(), std::nan(""));
    result.order_den.assign(result.errors.size(), std::nan(""));
    for (std::size_t i = 1; i < result.errors.size(); ++i) {
        result.order_mean[i] =
            std::log2(result.errors[i - 1].delta_mean / result.errors[i].delta_mean);
        result.order_den[i] =
            std::log2(result.errors[i - 1].delta_den / result.errors[i].delta_den);
    }
}
} // namespace

double log_log_slope(const std::vector<double>& levels, const std::vector<double>& errors) {
    const std::size_t n = levels.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(levels[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SweepResult run_sweep(const Scenario& scenario, SweepAxis axis,
                      const std::filesystem::path& cache_dir, const ReferencePolicy& policy) {
    SweepResult result;
    result.axis = axis;

    switch (axis) {
    case SweepAxis::Dt: {
        result.levels = levels_or_default(
            scenario, "dt_levels",
            {scenario.dt, scenario.dt / 2, scenario.dt / 4, scenario.dt / 8, scenario.dt / 16});
        const double finest = *std::min_element(result.levels.begin(), result.levels.end());
        const SolutionStats ref =
            reference_stats(scenario, finest, scenario.dx_denominator, cache_dir, policy);
        for (double dt : result.levels)
            result.errors.push_back(error_metrics(bdsg_stats(scenario, dt), ref));
        break;
    }
    case SweepAxis::Dx: {
        result.levels = levels_or_default(scenario, "dx_levels",
                                          {static_cast<double>(scenario.dx_denominator)});
        const int finest = static_cast<int>(*std::max_element(result.levels.begin(),
                                                              result.levels.end()));
        const SolutionStats fine_ref =
            reference_stats(scenario, scenario.dt, finest, cache_dir, policy);
        for (double level : result.levels) {
            const int denom = static_cast<int>(level);
            const SolutionStats ref =
                restrict_stats(fine_ref, scenario.build_grid(denom));
            result.errors.push_back(
                error_metrics(bdsg_stats(scenario, {}, denom), ref));
        }
        break;
    }
    case SweepAxis::Gpc: {
        result.levels = levels_or_default(scenario, "q_levels",
                                          {1, 2, 3, 4, 5, 6, 7, 8});
        ReferencePolicy gpc_policy = policy;
        gpc_policy.min_nodes = 2 * static_cast<int>(*std::max_element(result.levels.begin(),
                                                                      result.levels.end())) +
                               5;
        const SolutionStats ref = reference_stats(scenario, scenario.dt, scenario.dx_denominator,
                                                  cache_dir, gpc_policy);
        for (double level : result.levels)
            result.errors.push_back(error_metrics(
                bdsg_stats(scenario, {}, {}, static_cast<int>(level)), ref));
        break;
    }
    case SweepAxis::McK: {
        result.levels = levels_or_default(scenario, "k_levels", {10, 100, 1000});
        const SolutionStats ref =
            reference_stats(scenario, scenario.dt, scenario.dx_denominator, cache_dir, policy);
        for (double level : result.levels)
            result.errors.push_back(
                error_metrics(ts_mc_stats(scenario, static_cast<int>(level)), ref));
        break;
    }
    case SweepAxis::ScN: {
        result.levels = levels_or_default(scenario, "n_levels", {1, 3, 5, 7, 9});
        const double dt = scenario.sc_dt > 0.0 ? scenario.sc_dt : scenario.dt;
        const int denom = scenario.sc_dx_denominator > 0 ? scenario.sc_dx_denominator
                                                         : scenario.dx_denominator;
        Scenario sc_view = scenario;
        sc_view.dx_denominator = denom;
        const SolutionStats ref = reference_stats(sc_view, dt, denom, cache_dir, policy);
        for (double level : result.levels)
            result.errors.push_back(
                error_metrics(ts_sc_stats(scenario, static_cast<int>(level)), ref));
        break;
    }
    }
    append_orders(result);
    return result;
}

std::vector<CompareRow> compare_methods(const Scenario& scenario,
                                        const std::filesystem::path& cache_dir) {
    // one shared reference, fine enough for the finest method discretization
    double finest_dt = scenario.dt;
    int finest_denom = scenario.dx_denominator;
    for (const auto& m : scenario.methods) {
        if (m == "ts-sc") {
            if (scenario.sc_dt > 0.0) finest_dt = std::min(finest_dt, scenario.sc_dt);
            if (scenario.sc_dx_denominator > 0)
                finest_denom = std::max(finest_denom, scenario.sc_dx_denominator);
        }
    }
    Scenario ref_view = scenario;
    ref_view.dx_denominator = finest_denom;
    const SolutionStats fine_ref = reference_stats(ref_view, finest_dt, finest_denom, cache_dir);

    std::vector<CompareRow> rows;
    for (const auto& method : scenario.methods) {
        CompareRow row;
        row.method = method;
        const double t0 = now_ms();
        SolutionStats stats = [&] {
            if (method == "bdsg") return bdsg_stats(scenario);
            if (method == "ts-mc") return ts_mc_stats(scenario, scenario.mc_realizations);
            if (method == "ts-sc") return ts_sc_stats(scenario, scenario.sc_nodes);
            throw ScenarioError("unknown method: " + method);
        }();
        row.wall_ms = now_ms() - t0;
        row.error = error_metrics(stats, restrict_stats(fine_ref, stats.grid));
        rows.push_back(std::move(row));
    }
    return rows;
}

ConservationSeries conservation_run(const Scenario& scenario) {
    RunSpec spec = scenario.to_runspec();
    const BdsgOperators ops = prepare(spec);
    ConservationSeries series;
    run(spec, ops, initial_state(spec), [&](int, double t, const GpcState& state) {
        series.times.push_back(t);
        series.mass.push_back(total_mass(state));
        series.energy.push_back(
            total_energy(state, ops.lattice_samples, ops.coupling, spec.grid->epsilon()));
        series.second_moment.push_back(second_moment(state));
    });
    return series;
}

LocalizationResult localization(const Scenario& scenario, const std::vector<double>& sigmas) {
    LocalizationResult result;
    result.sigmas = sigmas;
    for (double sigma : sigmas) {
        Scenario sc = scenario;
        sc.sigma = sigma;
        RunSpec spec = sc.to_runspec();
        const BdsgOperators ops = prepare(spec);

        std::vector<double> times;
        std::vector<double> moments;
        GpcState final_state = run(spec, ops, initial_state(spec),
                                   [&](int, double t, const GpcState& state) {
                                       times.push_back(t);
                                       moments.push_back(second_moment(state));
                                   });
        if (result.times.empty()) result.times = times;
        result.moments.push_back(std::move(moments));
        result.final_density.push_back(mean_density(final_state));
        result.coefficient_norms.push_back(coefficient_norms(final_state));
    }

    // late-time spreading rate: least-squares dS/dt over the last third
    for (const auto& s : result.moments) {
        const std::size_t n = result.times.size();
        const std::size_t begin = n - n / 3;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const std::size_t m = n - begin;
        for (std::size_t i = begin; i < n; ++i) {
            sx += result.times[i];
            sy += s[i];
            sxx += result.times[i] * result.times[i];
            sxy += result.times[i] * s[i];
        }
        result.late_slopes.push_back((m * sxy - sx * sy) / (m * sxx - sx * sx));
    }
    return result;
}

} // namespace bdsg
