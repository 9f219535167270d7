#pragma once

#include "bdsg/bdstep.hpp"
#include "bdsg/gpc.hpp"

#include <functional>
#include <vector>

namespace bdsg {

/// Full description of one stochastic-Galerkin integration.
struct RunSpec {
    GridPtr grid;
    PeriodicPotential lattice_potential = PeriodicPotential::mathieu();
    RandomPotential random_potential = RandomPotential::harmonic_noise();
    double final_time = 1.0;
    double dt = 0.01;
    int gpc_order = 4;
    int bands = 0;      // 0 -> points per cell (exact mass conservation)
    int quad_nodes = 0; // 0 -> 2*order + 2
    Splitting splitting = Splitting::Strang;
    int snapshot_stride = 1;
};

/// Everything precomputed once per run: band table, basis, coupling
/// factorizations, and the lattice potential sampled on the grid.
struct BdsgOperators {
    LatticeTable table;
    GpcBasis basis;
    TripleProducts triple;
    CouplingSet coupling;
    std::vector<double> lattice_samples; // V(x/eps) on the flat grid
};

BdsgOperators prepare(const RunSpec& spec);

/// One time step of the coupled scheme. Strang form applies the potential
/// propagator for dt/2 on both sides of the exact lattice step; the lattice
/// step runs once per gPC coefficient (in parallel).
GpcState bdsg_step(const GpcState& state, const LatticeTable& table, const CouplingSet& coupling,
                   double dt, double epsilon, Splitting splitting = Splitting::Strang);

using RunObserver = std::function<void(int step, double time, const GpcState& state)>;

/// Integrates to final_time in uniform steps (final_time/dt must be an
/// integer to 1e-9). The observer, when given, fires at t=0 and then at
/// every snapshot_stride-th step plus the final one. Returns the final state.
GpcState run(const RunSpec& spec, const BdsgOperators& ops, GpcState initial,
             const RunObserver& observer = {});
GpcState run(const RunSpec& spec, GpcState initial, const RunObserver& observer = {});

/// Convenience wrapper collecting deep-copied snapshots (t=0 included).
std::vector<GpcState> run_collect(const RunSpec& spec, const BdsgOperators& ops, GpcState initial);

/// Unit-mass Gaussian initial state sized for the run's gPC basis.
GpcState initial_state(const RunSpec& spec);

} // namespace bdsg
