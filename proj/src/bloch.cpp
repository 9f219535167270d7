#include "bdsg/bloch.hpp"

#include "bdsg/errors.hpp"
#include "bdsg/fft.hpp"
#include "bdsg/parallel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace bdsg {

namespace {
using cplx = std::complex<double>;
constexpr double kInvSqrt2Pi = 0.39894228040143267794; // 1/sqrt(2*pi)

// phi_m(y_r, k) = (1/sqrt(2*pi)) sum_lambda chi_hat_m(lambda) e^{i(k+lambda) y_r}.
// With lambda = a - R/2 the lambda-sum is an unnormalized inverse DFT times
// the alternating sign (-1)^r.
Eigen::MatrixXcd phi_from_chi(const Eigen::MatrixXcd& chi, double k, const Grid& grid) {
    const int R = static_cast<int>(chi.rows());
    const int M = static_cast<int>(chi.cols());
    Eigen::MatrixXcd phi(R, M);
    std::vector<cplx> buf(static_cast<std::size_t>(R));
    for (int m = 0; m < M; ++m) {
        for (int a = 0; a < R; ++a) buf[static_cast<std::size_t>(a)] = chi(a, m);
        fft::backward(buf);
        for (int r = 0; r < R; ++r) {
            const double sign = (r % 2 == 0) ? 1.0 : -1.0;
            phi(r, m) = kInvSqrt2Pi * sign * std::polar(1.0, k * grid.y(r)) *
                        buf[static_cast<std::size_t>(r)];
        }
    }
    return phi;
}

// c holds V_hat(n) for plane-wave index differences n = a - b; with sampled
// coefficients the index wraps mod R, with analytic ones it does not.
Eigen::MatrixXcd assemble_from_coefficients(const std::vector<cplx>& c, double k, int R,
                                            bool wrap) {
    Eigen::MatrixXcd H(R, R);
    for (int a = 0; a < R; ++a) {
        const double lambda_a = a - R / 2;
        for (int b = 0; b < R; ++b) {
            const int n = wrap ? ((a - b) % R + R) % R : (a - b) + (R - 1);
            H(a, b) = c[static_cast<std::size_t>(n)];
        }
        H(a, a) += 0.5 * (k + lambda_a) * (k + lambda_a);
    }
    // real potentials give a Hermitian matrix up to roundoff; symmetrize exactly
    Eigen::MatrixXcd Hh = 0.5 * (H + H.adjoint());
    return Hh;
}

// analytic table indexed by n + (R-1), n in [-(R-1), R-1]
std::vector<cplx> analytic_coefficients(const PeriodicPotential& V, int R) {
    std::vector<cplx> c(static_cast<std::size_t>(2 * R - 1));
    for (int n = -(R - 1); n <= R - 1; ++n)
        c[static_cast<std::size_t>(n + R - 1)] = V.fourier_coefficient(n);
    return c;
}
} // namespace

std::vector<cplx> potential_fourier_coefficients(const PeriodicPotential& V, int points_per_cell) {
    std::vector<cplx> c(static_cast<std::size_t>(points_per_cell));
    const double two_pi = 2.0 * std::numbers::pi;
    for (int r = 0; r < points_per_cell; ++r)
        c[static_cast<std::size_t>(r)] = V(two_pi * r / points_per_cell);
    fft::forward(c);
    for (auto& v : c) v /= static_cast<double>(points_per_cell);
    return c;
}

Eigen::MatrixXcd assemble_shifted_hamiltonian(const PeriodicPotential& V, double k,
                                              int points_per_cell) {
    if (V.has_analytic_fourier())
        return assemble_from_coefficients(analytic_coefficients(V, points_per_cell), k,
                                          points_per_cell, /*wrap=*/false);
    return assemble_from_coefficients(potential_fourier_coefficients(V, points_per_cell), k,
                                      points_per_cell, /*wrap=*/true);
}

LatticeTable::LatticeTable(GridPtr grid, int bands, LatticeForm potential_id,
                           std::string potential_name, Eigen::MatrixXd energies,
                           std::vector<Eigen::MatrixXcd> chi_hat)
    : grid_(std::move(grid)),
      bands_(bands),
      potential_id_(potential_id),
      potential_name_(std::move(potential_name)),
      energies_(std::move(energies)),
      chi_hat_(std::move(chi_hat)) {
    const int L = grid_->cells();
    phi_.resize(static_cast<std::size_t>(L));
    parallel_for(static_cast<std::size_t>(L), [&](std::size_t ell) {
        phi_[ell] = phi_from_chi(chi_hat_[ell], grid_->k(static_cast<int>(ell)), *grid_);
    });
}

LatticeTable compute_lattice_table(const PeriodicPotential& V, const GridPtr& grid, int bands) {
    const int R = grid->points_per_cell();
    const int L = grid->cells();
    if (bands < 1 || bands > R)
        throw InvalidResolution("band count must lie in [1, R], got " + std::to_string(bands));

    const bool analytic = V.has_analytic_fourier();
    const auto coeffs =
        analytic ? analytic_coefficients(V, R) : potential_fourier_coefficients(V, R);

    Eigen::MatrixXd energies(bands, L);
    std::vector<Eigen::MatrixXcd> chi_hat(static_cast<std::size_t>(L));

    parallel_for(static_cast<std::size_t>(L), [&](std::size_t ell) {
        const Eigen::MatrixXcd H =
            assemble_from_coefficients(coeffs, grid->k(static_cast<int>(ell)), R, !analytic);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
        if (es.info() != Eigen::Success)
            throw EigensolveFailure("shifted-Hamiltonian eigensolve failed at quasimomentum index " +
                                    std::to_string(ell));
        energies.col(static_cast<Eigen::Index>(ell)) = es.eigenvalues().head(bands);
        chi_hat[ell] = es.eigenvectors().leftCols(bands);
    });

    return LatticeTable(grid, bands, V.id(), std::string(V.name()), std::move(energies),
                        std::move(chi_hat));
}

} // namespace bdsg
