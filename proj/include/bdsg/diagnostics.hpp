#pragma once

#include "bdsg/gpc.hpp"
#include "bdsg/wavefield.hpp"

#include <span>
#include <vector>

namespace bdsg {

/// Ensemble statistics of a solution: mean field E[psi] and mean density
/// E[|psi|^2] on a common grid.
struct SolutionStats {
    GridPtr grid;
    WaveField mean;
    std::vector<double> density;
};

SolutionStats stats_from(const GpcState& state);

/// Total mass M = sum_p ||psi_hat_p||^2 (the expectation of the mass over
/// the random domain).
double total_mass(const GpcState& state);

/// Discrete energy functional
///   H = sum_x dx [ (eps^2/2)|d_x psi_vec|^2 + V(x/eps)|psi_vec|^2
///                  + psi_vec^H A_U(x) psi_vec ],
/// with the derivative taken spectrally on the global grid. Throws
/// NonRealEnergy if the imaginary residue exceeds 1e-8 * |H|.
double total_energy(const GpcState& state, std::span<const double> lattice_potential_on_grid,
                    const CouplingSet& coupling, double epsilon);

/// Second spatial moment S = sum_x dx |x|^2 E[|psi|^2](x); raw coordinates
/// on [0, 2*pi], no centering.
double second_moment(const GpcState& state);

/// Energy of a single deterministic field in a fixed total potential.
double field_energy(const WaveField& field, std::span<const double> total_potential_on_grid,
                    double epsilon);

/// Spectral derivative on the periodic global grid (Nyquist mode zeroed).
std::vector<std::complex<double>> spectral_derivative(std::span<const std::complex<double>> values);

struct ErrorMetrics {
    double delta_mean = 0.0;
    double delta_den = 0.0;
};

/// delta_mean = || E[psi_ref] - E[psi_cand] ||,
/// delta_den  = || sqrt(E[|psi_ref|^2]) - sqrt(E[|psi_cand|^2]) ||,
/// both in the discrete L2 norm. Throws GridMismatch for different grids.
ErrorMetrics error_metrics(const SolutionStats& candidate, const SolutionStats& reference);

} // namespace bdsg
