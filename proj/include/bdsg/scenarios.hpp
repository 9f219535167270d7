#pragma once

#include "bdsg/driver.hpp"
#include "bdsg/potentials.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace bdsg {

/// One canonical experiment: potentials, discretization, gPC order, method
/// set, and optional numeric expectations / sweep levels. The spatial step
/// is pi/dx_denominator, which together with epsilon fixes the points per
/// cell. Serializes to the plain-text scenario file format losslessly.
struct Scenario {
    std::string name = "scenario";

    LatticeForm lattice = LatticeForm::Mathieu;
    RandomForm random = RandomForm::HarmonicNoise;
    double sigma = 1.0; // magnitude of the cosine disorder only

    double epsilon = 0.25;
    int dx_denominator = 128; // dx = pi / dx_denominator

    double final_time = 1.0;
    double dt = 0.01;
    int snapshot_stride = 1;

    int gpc_order = 4;
    int quad_nodes = 0; // 0 -> 2*order+2
    int bands = 0;      // 0 -> points per cell
    std::string splitting = "strang"; // strang | first_order

    std::vector<std::string> methods = {"bdsg"};
    int mc_realizations = 1000;
    std::uint64_t mc_seed = 46;
    int sc_nodes = 5;
    double sc_dt = 0.0;     // 0 -> same dt as the main method
    int sc_dx_denominator = 0; // 0 -> same grid

    std::map<std::string, std::vector<double>> expect;

    /// Scenarios at or below eps = 1/512 are excluded from default runs.
    bool heavy() const { return epsilon <= 1.0 / 512.0 + 1e-15; }

    int cells() const;
    int points_per_cell() const; // from dx = 2*pi/(L*R); throws if invalid
    GridPtr build_grid() const;
    GridPtr build_grid(int denominator) const;

    PeriodicPotential lattice_potential() const { return make_lattice_potential(lattice); }
    RandomPotential random_potential() const { return make_random_potential(random, sigma); }
    RandomPotential random_potential(double sigma_override) const {
        return make_random_potential(random, sigma_override);
    }

    RunSpec to_runspec() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Serializes to the scenario document format (see README): a `name` key
/// followed by [grid], [potentials], [time], [gpc], [methods], [expect].
std::string format_scenario(const Scenario& scenario);

/// Parses a scenario document. Unknown sections or keys are errors.
Scenario parse_scenario(const std::string& text, const std::string& fallback_name = "scenario");

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// The bundled benchmark scenarios (temporal/spatial/gPC sweeps, method
/// comparisons, conservation and localization runs).
const std::vector<Scenario>& builtin_scenarios();

/// Looks up a bundled scenario by name; throws ScenarioError if absent.
const Scenario& builtin_scenario(const std::string& name);

/// Path or bundled name, whichever matches.
Scenario resolve_scenario(const std::string& path_or_name);

} // namespace bdsg
