#pragma once

#include "bdsg/diagnostics.hpp"
#include "bdsg/potentials.hpp"
#include "bdsg/wavefield.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace bdsg {

/// One Strang step of the classical time-splitting spectral scheme:
/// half potential phase, exact kinetic step in global Fourier space
/// (mode xi picks up e^{-i eps xi^2 dt/2}), half potential phase.
/// total_potential holds V(x/eps) + U(x, z) sampled on the flat grid.
WaveField ts_step(const WaveField& field, std::span<const double> total_potential, double dt,
                  double epsilon);

/// Runs `steps` TS steps with cached phase factors.
WaveField ts_run(const WaveField& initial, std::span<const double> total_potential, double dt,
                 int steps, double epsilon);

/// V(x/eps) + U(x, z) sampled on the flat grid.
std::vector<double> total_potential_samples(const Grid& grid, const PeriodicPotential& V,
                                            const RandomPotential& U, double z);

/// Deterministic mapping (seed, index) -> z in [-1,1]; the draws do not
/// depend on evaluation order, so ensemble runs are bit-reproducible for
/// any thread count.
double uniform_draw(std::uint64_t seed, std::uint64_t index);

/// Monte Carlo over z ~ Uniform[-1,1]: runs solve_at for each draw and
/// returns ensemble mean field and mean density. Realizations run in
/// parallel; the reduction is fixed-order pairwise over index blocks.
SolutionStats monte_carlo(const std::function<WaveField(double)>& solve_at, int realizations,
                          std::uint64_t seed);

/// Solutions at Gauss-Legendre nodes plus quadrature statistics and a
/// barycentric Lagrange interpolant in z.
struct CollocationResult {
    std::vector<double> nodes;
    std::vector<double> weights; // for dz/2, sum to 1
    std::vector<WaveField> solutions;

    SolutionStats stats() const;
    WaveField interpolate(double z) const;
};

CollocationResult stochastic_collocation(const std::function<WaveField(double)>& solve_at,
                                         int n_nodes);

} // namespace bdsg
