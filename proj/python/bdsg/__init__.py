"""Bloch-decomposition stochastic Galerkin solver for the 1-D semiclassical
Schroedinger equation with a periodic lattice and a random external potential.

The heavy lifting lives in the compiled ``_core`` module; this package simply
re-exports its public surface.
"""

from ._core import (  # noqa: F401
    CollocationResult,
    CouplingSet,
    GpcBasis,
    GpcState,
    Grid,
    LatticeForm,
    LatticeTable,
    PeriodicPotential,
    RandomForm,
    RandomPotential,
    RunSpec,
    Scenario,
    SolutionStats,
    WaveField,
    __version__,
    bd_lattice_step,
    bd_step,
    bdsg_stats,
    build_coupling,
    builtin_scenario,
    builtin_scenarios,
    cell_transform,
    coefficient_norms,
    compare_methods,
    compute_lattice_table,
    conservation_run,
    deterministic_state,
    discrete_norm,
    error_metrics,
    gauss_legendre_rule,
    initial_gaussian,
    inverse_cell_transform,
    load_lattice_table,
    load_scenario,
    localization,
    make_grid,
    mean_density,
    mean_field,
    monte_carlo,
    potential_phase_step,
    project_initial,
    project_potential,
    random_potential_step,
    reference_stats,
    run,
    run_sweep,
    save_scenario,
    second_moment,
    set_max_threads,
    stats_from,
    stochastic_collocation,
    total_energy,
    total_mass,
    total_potential_samples,
    triple_products,
    ts_run,
    ts_step,
    uniform_draw,
)

__all__ = [name for name in dir() if not name.startswith("_")]
