#pragma once

#include "bdsg/bloch.hpp"
#include "bdsg/wavefield.hpp"

#include <Eigen/Dense>

#include <span>

namespace bdsg {

/// Band-space coefficients C_{m,l}; with M = R they carry the full field
/// (Parseval: sum |C|^2 = L^2 * ||psi||^2 with the discrete norm).
struct BlochCoefficients {
    Eigen::MatrixXcd C; // M x L
};

enum class Splitting {
    Strang,              // potential half-steps outermost
    LatticeThenPotential, // first order
    PotentialThenLattice, // first order, opposite operator order
};

/// Across-cell DFT: psi_tilde_{l,r} = sum_j psi_{j,r} e^{-i 2 pi k_l j}.
/// The result lives on the same (l, r) storage with l now a quasimomentum
/// index. Unitary up to the factor L (sum |psi_tilde|^2 = L sum |psi|^2).
WaveField cell_transform(const WaveField& field);

/// Inverse of cell_transform: psi_{l,r} = (1/L) sum_j psi_tilde_{j,r} e^{i 2 pi k_j l}.
WaveField inverse_cell_transform(const WaveField& transformed);

/// Projects a transformed field onto the Bloch basis:
/// C_{m,l} = (2*pi/R) sum_r psi_tilde_{l,r} conj(phi_m(y_r, k_l)),
/// with the lambda-sum fused into one FFT per quasimomentum.
BlochCoefficients analyze(const WaveField& transformed, const LatticeTable& table);

/// Band phase evolution C_{m,l} *= e^{-i E_m(k_l) dt / eps}; modulus-preserving.
BlochCoefficients evolve_bands(const BlochCoefficients& coeffs, const LatticeTable& table,
                               double dt, double epsilon);

/// Sums band contributions back into a transformed field:
/// psi_tilde_{l,r} = sum_m C_{m,l} chi_m(y_r,k_l) e^{i k_l y_r}.
WaveField synthesize(const BlochCoefficients& coeffs, const LatticeTable& table);

/// One exact step of the lattice part (kinetic + periodic potential):
/// inverse_cell_transform . synthesize . evolve_bands . analyze . cell_transform.
/// Preserves the discrete norm to roundoff when table has M = R bands.
WaveField bd_lattice_step(const WaveField& field, const LatticeTable& table, double dt,
                          double epsilon);

/// Pointwise phase rotation psi *= e^{-i U(x) dt / eps}; exactly norm-preserving.
WaveField potential_phase_step(const WaveField& field, std::span<const double> potential_on_grid,
                               double dt, double epsilon);

/// Deterministic Bloch-decomposition time step combining lattice and external
/// potential parts in the requested splitting.
WaveField bd_step(const WaveField& field, const LatticeTable& table,
                  std::span<const double> potential_on_grid, double dt, double epsilon,
                  Splitting splitting = Splitting::Strang);

} // namespace bdsg
