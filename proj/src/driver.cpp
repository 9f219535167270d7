#include "bdsg/driver.hpp"

#include "bdsg/errors.hpp"
#include "bdsg/parallel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bdsg {

BdsgOperators prepare(const RunSpec& spec) {
    const int R = spec.grid->points_per_cell();
    const int bands = spec.bands > 0 ? spec.bands : R;
    LatticeTable table = compute_lattice_table(spec.lattice_potential, spec.grid, bands);

    GpcBasis basis(spec.gpc_order, spec.quad_nodes);
    TripleProducts triple = triple_products(basis);
    const Eigen::MatrixXd coeffs = project_potential(spec.random_potential, basis, *spec.grid);
    CouplingSet coupling = build_coupling(coeffs, triple, spec.grid);

    std::vector<double> lattice_samples(static_cast<std::size_t>(spec.grid->total_points()));
    for (int ell = 0; ell < spec.grid->cells(); ++ell)
        for (int r = 0; r < spec.grid->points_per_cell(); ++r)
            lattice_samples[static_cast<std::size_t>(spec.grid->index(ell, r))] =
                spec.lattice_potential(spec.grid->y(r));

    return BdsgOperators{std::move(table), std::move(basis), std::move(triple),
                         std::move(coupling), std::move(lattice_samples)};
}

namespace {
GpcState lattice_step_all(const GpcState& state, const LatticeTable& table, double dt,
                          double epsilon) {
    GpcState out;
    out.coeffs.reserve(state.coeffs.size());
    for (const auto& field : state.coeffs) out.coeffs.emplace_back(field.grid_ptr());
    // the P coefficient fields evolve independently
    parallel_for(state.coeffs.size(), [&](std::size_t p) {
        out.coeffs[p] = bd_lattice_step(state.coeffs[p], table, dt, epsilon);
    });
    return out;
}
} // namespace

GpcState bdsg_step(const GpcState& state, const LatticeTable& table, const CouplingSet& coupling,
                   double dt, double epsilon, Splitting splitting) {
    switch (splitting) {
    case Splitting::Strang: {
        GpcState s = random_potential_step(state, coupling, 0.5 * dt, epsilon);
        s = lattice_step_all(s, table, dt, epsilon);
        return random_potential_step(s, coupling, 0.5 * dt, epsilon);
    }
    case Splitting::LatticeThenPotential: {
        const GpcState s = lattice_step_all(state, table, dt, epsilon);
        return random_potential_step(s, coupling, dt, epsilon);
    }
    case Splitting::PotentialThenLattice: {
        const GpcState s = random_potential_step(state, coupling, dt, epsilon);
        return lattice_step_all(s, table, dt, epsilon);
    }
    }
    throw std::logic_error("unreachable splitting");
}

GpcState run(const RunSpec& spec, const BdsgOperators& ops, GpcState initial,
             const RunObserver& observer) {
    const double ratio = spec.final_time / spec.dt;
    const long long steps = std::llround(ratio);
    if (steps < 0 || std::abs(ratio - static_cast<double>(steps)) > 1e-9)
        throw std::invalid_argument("final_time/dt = " + std::to_string(ratio) +
                                    " is not an integer step count");

    const double epsilon = spec.grid->epsilon();
    const int stride = spec.snapshot_stride > 0 ? spec.snapshot_stride : 1;

    if (observer) observer(0, 0.0, initial);
    GpcState state = std::move(initial);
    for (long long n = 1; n <= steps; ++n) {
        state = bdsg_step(state, ops.table, ops.coupling, spec.dt, epsilon, spec.splitting);
        if (observer && (n % stride == 0 || n == steps))
            observer(static_cast<int>(n), static_cast<double>(n) * spec.dt, state);
    }
    return state;
}

GpcState run(const RunSpec& spec, GpcState initial, const RunObserver& observer) {
    const BdsgOperators ops = prepare(spec);
    return run(spec, ops, std::move(initial), observer);
}

std::vector<GpcState> run_collect(const RunSpec& spec, const BdsgOperators& ops,
                                  GpcState initial) {
    std::vector<GpcState> snapshots;
    run(spec, ops, std::move(initial),
        [&](int, double, const GpcState& s) { snapshots.push_back(s); });
    return snapshots;
}

GpcState initial_state(const RunSpec& spec) {
    return deterministic_state(initial_gaussian(spec.grid), spec.gpc_order + 1);
}

} // namespace bdsg
