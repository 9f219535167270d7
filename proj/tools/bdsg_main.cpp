// bdsg command line front end: run scenarios, convergence sweeps, method
// comparisons, and localization experiments; all results land as CSV + JSON.

#include "bdsg/baselines.hpp"
#include "bdsg/driver.hpp"
#include "bdsg/errors.hpp"
#include "bdsg/experiments.hpp"
#include "bdsg/io.hpp"
#include "bdsg/parallel.hpp"
#include "bdsg/table_cache.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace bdsg;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

json scenario_json(const Scenario& sc) {
    json expect = json::object();
    for (const auto& [key, values] : sc.expect) expect[key] = values;
    return json{{"name", sc.name},
                {"lattice", std::string(to_name(sc.lattice))},
                {"random", std::string(to_name(sc.random))},
                {"sigma", sc.sigma},
                {"epsilon", sc.epsilon},
                {"dx", "pi/" + std::to_string(sc.dx_denominator)},
                {"T", sc.final_time},
                {"dt", sc.dt},
                {"snapshot_stride", sc.snapshot_stride},
                {"gpc_order", sc.gpc_order},
                {"quad_nodes", sc.quad_nodes},
                {"bands", sc.bands},
                {"splitting", sc.splitting},
                {"methods", sc.methods},
                {"mc_realizations", sc.mc_realizations},
                {"mc_seed", sc.mc_seed},
                {"sc_nodes", sc.sc_nodes},
                {"sc_dt", sc.sc_dt},
                {"sc_dx", sc.sc_dx_denominator},
                {"heavy", sc.heavy()},
                {"expect", expect}};
}

void write_run_json(const fs::path& out_dir, const std::string& command, const Scenario& sc,
                    const json& extra, double total_ms, const std::vector<std::string>& outputs) {
    json doc{{"command", command},
             {"version", kVersion},
             {"threads", max_threads()},
             {"scenario", scenario_json(sc)},
             {"timings_ms", {{"total", total_ms}}},
             {"outputs", outputs}};
    for (const auto& [key, value] : extra.items()) doc[key] = value;
    std::ofstream out(out_dir / "run.json", std::ios::trunc);
    if (!out) throw IoError("cannot write " + (out_dir / "run.json").string());
    out << doc.dump(2) << "\n";
}

void write_stats(const fs::path& out_dir, const SolutionStats& stats) {
    const Grid& grid = *stats.grid;
    {
        CsvWriter csv(out_dir / "mean_field.csv", {"x", "re", "im"});
        auto v = stats.mean.values();
        for (int i = 0; i < grid.total_points(); ++i)
            csv.row_numeric({grid.x_at(i), v[static_cast<std::size_t>(i)].real(),
                             v[static_cast<std::size_t>(i)].imag()});
    }
    {
        CsvWriter csv(out_dir / "mean_density.csv", {"x", "density"});
        for (int i = 0; i < grid.total_points(); ++i)
            csv.row_numeric({grid.x_at(i), stats.density[static_cast<std::size_t>(i)]});
    }
}

struct ConservedRow {
    double t, mass, energy, second_moment;
};

void write_conserved(const fs::path& out_dir, const std::vector<ConservedRow>& rows) {
    CsvWriter csv(out_dir / "conserved.csv", {"t", "mass", "energy", "second_moment"});
    for (const auto& r : rows) csv.row_numeric({r.t, r.mass, r.energy, r.second_moment});
}

double density_second_moment(const Grid& grid, std::span<const double> density) {
    double s = 0.0;
    for (int i = 0; i < grid.total_points(); ++i)
        s += grid.x_at(i) * grid.x_at(i) * density[static_cast<std::size_t>(i)];
    return s * grid.dx();
}

double density_mass(const Grid& grid, std::span<const double> density) {
    double s = 0.0;
    for (double d : density) s += d;
    return s * grid.dx();
}

// ensemble solve of the classical scheme with conserved-quantity rows at the
// endpoints (per-sample energies need the per-sample fields)
struct EnsembleRun {
    SolutionStats stats;
    std::vector<ConservedRow> conserved;
};

EnsembleRun ensemble_endpoints(const Scenario& sc, const std::vector<double>& zs,
                               const std::vector<double>& weights) {
    const GridPtr grid = sc.build_grid();
    const auto V = sc.lattice_potential();
    const auto U = sc.random_potential();
    const int steps = static_cast<int>(std::llround(sc.final_time / sc.dt));
    const WaveField initial = initial_gaussian(grid);

    const std::size_t n = static_cast<std::size_t>(grid->total_points());
    std::vector<std::complex<double>> mean(n);
    std::vector<double> density(n, 0.0);
    ConservedRow row0{0.0, 0.0, 0.0, 0.0};
    ConservedRow row1{sc.final_time, 0.0, 0.0, 0.0};

    for (std::size_t j = 0; j < zs.size(); ++j) {
        const auto pot = total_potential_samples(*grid, V, U, zs[j]);
        const WaveField final_field = ts_run(initial, pot, sc.dt, steps, grid->epsilon());
        const double w = weights[j];
        const double m0 = discrete_norm(initial);
        const double m1 = discrete_norm(final_field);
        row0.mass += w * m0 * m0;
        row1.mass += w * m1 * m1;
        row0.energy += w * field_energy(initial, pot, grid->epsilon());
        row1.energy += w * field_energy(final_field, pot, grid->epsilon());
        auto fv = final_field.values();
        auto iv = initial.values();
        for (std::size_t i = 0; i < n; ++i) {
            mean[i] += w * fv[i];
            density[i] += w * std::norm(fv[i]);
            row0.second_moment += w * grid->dx() * grid->x_at(static_cast<int>(i)) *
                                  grid->x_at(static_cast<int>(i)) * std::norm(iv[i]);
            row1.second_moment += w * grid->dx() * grid->x_at(static_cast<int>(i)) *
                                  grid->x_at(static_cast<int>(i)) * std::norm(fv[i]);
        }
    }
    SolutionStats stats{grid, WaveField(grid, std::move(mean)), std::move(density)};
    return EnsembleRun{std::move(stats), {row0, row1}};
}

Scenario load_checked(const std::string& path_or_name, bool allow_heavy) {
    Scenario sc = resolve_scenario(path_or_name);
    if (sc.heavy() && !allow_heavy)
        throw ScenarioError("scenario '" + sc.name +
                            "' is marked heavy (epsilon <= 1/512); pass --heavy to run it");
    return sc;
}

std::string sigma_label(double sigma) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", sigma);
    std::string s = buf;
    for (auto& c : s)
        if (c == '.') c = 'p';
    return s;
}

int cmd_bands(const std::string& scenario_arg, const fs::path& out_dir, bool allow_heavy) {
    const double t0 = now_ms();
    const Scenario sc = load_checked(scenario_arg, allow_heavy);
    fs::create_directories(out_dir);

    const GridPtr grid = sc.build_grid();
    const int bands = sc.bands > 0 ? sc.bands : grid->points_per_cell();
    const LatticeTable table =
        load_or_compute_lattice_table(sc.lattice_potential(), grid, bands, out_dir);
    if (table.truncated())
        std::fprintf(stderr,
                     "warning: %d of %d bands kept; discrete mass conservation is inexact\n",
                     bands, grid->points_per_cell());

    const auto cache_name =
        lattice_table_cache_name(to_name(sc.lattice), grid->cells(), grid->points_per_cell(),
                                 bands);
    {
        CsvWriter csv(out_dir / "bands.csv", {"m", "ell", "k", "E"});
        for (int m = 0; m < table.bands(); ++m)
            for (int ell = 0; ell < grid->cells(); ++ell)
                csv.row_numeric({static_cast<double>(m + 1), static_cast<double>(ell + 1),
                                 grid->k(ell), table.energy(m, ell)});
    }
    write_run_json(out_dir, "bands", sc, {{"bands", bands}}, now_ms() - t0,
                   {"bands.csv", cache_name.string(), "run.json"});
    std::printf("wrote %s and %s\n", (out_dir / "bands.csv").c_str(),
                (out_dir / cache_name).c_str());
    return 0;
}

int cmd_run(const std::string& scenario_arg, const std::string& method, const fs::path& out_dir,
            bool allow_heavy) {
    const double t0 = now_ms();
    const Scenario sc = load_checked(scenario_arg, allow_heavy);
    fs::create_directories(out_dir);

    json extra{{"method", method}};
    if (method == "bdsg") {
        RunSpec spec = sc.to_runspec();
        const BdsgOperators ops = prepare(spec);
        if (ops.table.truncated())
            std::fprintf(stderr, "warning: truncated band set; mass conservation is inexact\n");
        std::vector<ConservedRow> rows;
        GpcState final_state =
            run(spec, ops, initial_state(spec), [&](int, double t, const GpcState& state) {
                rows.push_back({t, total_mass(state),
                                total_energy(state, ops.lattice_samples, ops.coupling,
                                             spec.grid->epsilon()),
                                second_moment(state)});
            });
        write_stats(out_dir, stats_from(final_state));
        write_conserved(out_dir, rows);
        extra["gpc_coefficient_norms"] = coefficient_norms(final_state);
    } else if (method == "ts-sc") {
        auto [nodes, weights] = gauss_legendre_rule(sc.sc_nodes);
        Scenario view = sc;
        if (sc.sc_dt > 0.0) view.dt = sc.sc_dt;
        if (sc.sc_dx_denominator > 0) view.dx_denominator = sc.sc_dx_denominator;
        const EnsembleRun result = ensemble_endpoints(view, nodes, weights);
        write_stats(out_dir, result.stats);
        write_conserved(out_dir, result.conserved);
    } else if (method == "ts-mc") {
        std::vector<double> zs(static_cast<std::size_t>(sc.mc_realizations));
        for (std::size_t k = 0; k < zs.size(); ++k)
            zs[k] = uniform_draw(sc.mc_seed, static_cast<std::uint64_t>(k));
        std::vector<double> weights(zs.size(), 1.0 / static_cast<double>(zs.size()));
        const EnsembleRun result = ensemble_endpoints(sc, zs, weights);
        write_stats(out_dir, result.stats);
        write_conserved(out_dir, result.conserved);
    } else {
        throw ScenarioError("unknown method: " + method);
    }

    write_run_json(out_dir, "run", sc, extra, now_ms() - t0,
                   {"mean_field.csv", "mean_density.csv", "conserved.csv", "run.json"});
    std::printf("wrote results to %s\n", out_dir.c_str());
    return 0;
}

int cmd_sweep(const std::string& scenario_arg, const std::string& axis_name,
              const fs::path& out_dir, const fs::path& cache_dir, bool allow_heavy) {
    const double t0 = now_ms();
    const Scenario sc = load_checked(scenario_arg, allow_heavy);
    const SweepAxis axis = sweep_axis_from_name(axis_name);
    fs::create_directories(out_dir);

    const SweepResult result = run_sweep(sc, axis, cache_dir);
    {
        CsvWriter csv(out_dir / "errors.csv",
                      {"level", "delta_mean", "order_mean", "delta_den", "order_den"});
        for (std::size_t i = 0; i < result.levels.size(); ++i) {
            std::vector<std::string> cells{format_g17(result.levels[i]),
                                           format_g17(result.errors[i].delta_mean),
                                           i == 0 ? "" : format_g17(result.order_mean[i]),
                                           format_g17(result.errors[i].delta_den),
                                           i == 0 ? "" : format_g17(result.order_den[i])};
            csv.row(cells);
        }
    }
    json extra{{"axis", axis_name}};
    if (result.levels.size() > 1) {
        std::vector<double> mean_errors;
        for (const auto& e : result.errors) mean_errors.push_back(e.delta_mean);
        extra["log_log_slope_mean"] = log_log_slope(result.levels, mean_errors);
    }
    write_run_json(out_dir, "sweep", sc, extra, now_ms() - t0, {"errors.csv", "run.json"});
    std::printf("wrote %s\n", (out_dir / "errors.csv").c_str());
    return 0;
}

int cmd_compare(const std::string& scenario_arg, const fs::path& out_dir,
                const fs::path& cache_dir, bool allow_heavy) {
    const double t0 = now_ms();
    const Scenario sc = load_checked(scenario_arg, allow_heavy);
    fs::create_directories(out_dir);

    const auto rows = compare_methods(sc, cache_dir);
    {
        CsvWriter csv(out_dir / "compare.csv", {"method", "delta_mean", "delta_den", "wall_ms"});
        for (const auto& row : rows)
            csv.row({row.method, format_g17(row.error.delta_mean),
                     format_g17(row.error.delta_den), format_g17(row.wall_ms)});
    }
    write_run_json(out_dir, "compare", sc, json::object(), now_ms() - t0,
                   {"compare.csv", "run.json"});
    std::printf("wrote %s\n", (out_dir / "compare.csv").c_str());
    return 0;
}

int cmd_localize(const std::string& scenario_arg, std::vector<double> sigmas,
                 const fs::path& out_dir, bool allow_heavy) {
    const double t0 = now_ms();
    const Scenario sc = load_checked(scenario_arg, allow_heavy);
    fs::create_directories(out_dir);
    if (sigmas.empty()) {
        if (auto it = sc.expect.find("sigma_levels"); it != sc.expect.end())
            sigmas = it->second;
        else
            sigmas = {0.0, 3.0, 5.0};
    }

    const LocalizationResult result = localization(sc, sigmas);
    std::vector<std::string> moment_cols{"t"};
    std::vector<std::string> density_cols{"x"};
    std::vector<std::string> decay_cols{"order"};
    for (double s : sigmas) {
        moment_cols.push_back("s_sigma" + sigma_label(s));
        density_cols.push_back("density_sigma" + sigma_label(s));
        decay_cols.push_back("norm_sigma" + sigma_label(s));
    }
    {
        CsvWriter csv(out_dir / "moments.csv", moment_cols);
        for (std::size_t i = 0; i < result.times.size(); ++i) {
            std::vector<double> row{result.times[i]};
            for (const auto& m : result.moments) row.push_back(m[i]);
            csv.row_numeric(row);
        }
    }
    {
        const GridPtr grid = sc.build_grid();
        CsvWriter csv(out_dir / "densities.csv", density_cols);
        for (int i = 0; i < grid->total_points(); ++i) {
            std::vector<double> row{grid->x_at(i)};
            for (const auto& d : result.final_density)
                row.push_back(d[static_cast<std::size_t>(i)]);
            csv.row_numeric(row);
        }
    }
    {
        CsvWriter csv(out_dir / "gpc_decay.csv", decay_cols);
        for (std::size_t p = 0; p < result.coefficient_norms.front().size(); ++p) {
            std::vector<double> row{static_cast<double>(p + 1)};
            for (const auto& norms : result.coefficient_norms) row.push_back(norms[p]);
            csv.row_numeric(row);
        }
    }
    write_run_json(out_dir, "localize", sc,
                   {{"sigmas", sigmas}, {"late_slopes", result.late_slopes}}, now_ms() - t0,
                   {"moments.csv", "densities.csv", "gpc_decay.csv", "run.json"});
    std::printf("wrote localization results to %s\n", out_dir.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bloch-decomposition stochastic Galerkin solver for the semiclassical "
                 "Schroedinger equation with a random external potential"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    int threads = 0;
    std::string cache_dir = "bdsg-cache";
    bool allow_heavy = false;
    app.add_option("--threads", threads, "cap worker threads (0 = all cores)");
    app.add_option("--cache-dir", cache_dir, "directory for band/reference caches");
    app.add_flag("--heavy", allow_heavy, "allow scenarios marked heavy (epsilon <= 1/512)");

    std::string scenario_arg;
    std::string out_dir = "bdsg-out";
    std::string method = "bdsg";
    std::string axis = "dt";
    std::vector<double> sigmas;

    auto* bands = app.add_subcommand("bands", "band table cache + energy CSV");
    bands->add_option("--scenario", scenario_arg, "scenario file or bundled name")->required();
    bands->add_option("--out", out_dir, "output directory");

    auto* run_cmd = app.add_subcommand("run", "integrate one scenario with one method");
    run_cmd->add_option("--scenario", scenario_arg)->required();
    run_cmd->add_option("--method", method, "bdsg | ts-mc | ts-sc")
        ->check(CLI::IsMember({"bdsg", "ts-mc", "ts-sc"}));
    run_cmd->add_option("--out", out_dir);

    auto* sweep = app.add_subcommand("sweep", "error sweep against the reference solver");
    sweep->add_option("--scenario", scenario_arg)->required();
    sweep->add_option("--axis", axis, "dt | dx | gpc | mc-k | sc-n")
        ->check(CLI::IsMember({"dt", "dx", "gpc", "mc-k", "sc-n"}));
    sweep->add_option("--out", out_dir);

    auto* compare = app.add_subcommand("compare", "all scenario methods vs one reference");
    compare->add_option("--scenario", scenario_arg)->required();
    compare->add_option("--out", out_dir);

    auto* localize = app.add_subcommand("localize", "wave spreading across disorder strengths");
    localize->add_option("--scenario", scenario_arg)->required();
    localize->add_option("--sigmas", sigmas, "disorder magnitudes (default from scenario)");
    localize->add_option("--out", out_dir);

    CLI11_PARSE(app, argc, argv);
    set_max_threads(threads);

    try {
        if (bands->parsed()) return cmd_bands(scenario_arg, out_dir, allow_heavy);
        if (run_cmd->parsed()) return cmd_run(scenario_arg, method, out_dir, allow_heavy);
        if (sweep->parsed()) return cmd_sweep(scenario_arg, axis, out_dir, cache_dir, allow_heavy);
        if (compare->parsed()) return cmd_compare(scenario_arg, out_dir, cache_dir, allow_heavy);
        if (localize->parsed()) return cmd_localize(scenario_arg, sigmas, out_dir, allow_heavy);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
