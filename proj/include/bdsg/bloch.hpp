#pragma once

#include "bdsg/grid.hpp"
#include "bdsg/potentials.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace bdsg {

/// Precomputed band data: energies E_m(k_l) and the Fourier coefficients
/// chi_hat_m(lambda, k_l) of the periodic Bloch factors, one unitary (when
/// M = R) eigenvector matrix per quasimomentum. Row a of a chi_hat block
/// corresponds to the plane-wave index lambda = a - R/2. Immutable.
class LatticeTable {
public:
    LatticeTable(GridPtr grid, int bands, LatticeForm potential_id,
                 std::string potential_name, Eigen::MatrixXd energies,
                 std::vector<Eigen::MatrixXcd> chi_hat);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }

    int bands() const { return bands_; }

    /// True when fewer bands than grid points are kept; exact discrete mass
    /// conservation then no longer holds.
    bool truncated() const { return bands_ < grid_->points_per_cell(); }

    double energy(int m, int ell) const { return energies_(m, ell); }
    const Eigen::MatrixXd& energies() const { return energies_; } // M x L

    /// R x M coefficient matrix for quasimomentum k_l, orthonormal columns.
    const Eigen::MatrixXcd& chi_hat(int ell) const {
        return chi_hat_[static_cast<std::size_t>(ell)];
    }

    /// R x M matrix of Bloch eigenfunction values phi_m(y_r, k_l),
    /// reconstructed with the 1/sqrt(2*pi) scale that makes
    /// sum_r phi_m conj(phi_n) = (R/(2*pi)) delta_{mn}.
    const Eigen::MatrixXcd& phi(int ell) const {
        return phi_[static_cast<std::size_t>(ell)];
    }

    LatticeForm potential_id() const { return potential_id_; }
    const std::string& potential_name() const { return potential_name_; }

private:
    GridPtr grid_;
    int bands_;
    LatticeForm potential_id_;
    std::string potential_name_;
    Eigen::MatrixXd energies_;
    std::vector<Eigen::MatrixXcd> chi_hat_;
    std::vector<Eigen::MatrixXcd> phi_;
};

/// Discrete Fourier coefficients of R potential samples V(y_r);
/// c[n] = (1/R) sum_r V(y_r) e^{-i n y_r}, n = 0..R-1.
std::vector<std::complex<double>> potential_fourier_coefficients(const PeriodicPotential& V,
                                                                 int points_per_cell);

/// Plane-wave discretization of H(k) = (1/2)(-i d/dy + k)^2 + V(y):
/// H[a,b] = (1/2)(k + lambda_a)^2 delta_ab + V_hat((lambda_a - lambda_b) mod R)
/// with lambda = a - R/2. Hermitian by construction for real V.
Eigen::MatrixXcd assemble_shifted_hamiltonian(const PeriodicPotential& V, double k,
                                              int points_per_cell);

/// Solves the shifted-Hamiltonian eigenproblem at every quasimomentum of the
/// grid (in parallel) and keeps the `bands` lowest eigenpairs, eigenvalues
/// ascending. Throws EigensolveFailure if a solve does not converge.
LatticeTable compute_lattice_table(const PeriodicPotential& V, const GridPtr& grid, int bands);

} // namespace bdsg
