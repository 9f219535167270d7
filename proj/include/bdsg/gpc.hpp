#pragma once

#include "bdsg/potentials.hpp"
#include "bdsg/wavefield.hpp"

#include <Eigen/Dense>

#include <functional>
#include <utility>
#include <vector>

namespace bdsg {

/// Gauss-Legendre rule with n nodes on [-1,1], weights normalized for the
/// uniform probability measure dz/2 (they sum to 1).
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_rule(int n);

/// Legendre polynomial chaos basis, orthonormal under Uniform[-1,1]:
/// evaluate(p, z) = sqrt(2p+1) * P_p(z), p = 0..order. Carries its own
/// quadrature rule (default 2*order+2 nodes, enough for degree-3*order
/// integrands).
class GpcBasis {
public:
    explicit GpcBasis(int order, int quad_nodes = 0);

    int order() const { return order_; }
    int size() const { return order_ + 1; } // P
    int quad_size() const { return static_cast<int>(nodes_.size()); }

    double evaluate(int p, double z) const;

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

private:
    int order_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Fully symmetric triple-product tensor e_{jqp} = E[Phi_j Phi_q Phi_p].
class TripleProducts {
public:
    TripleProducts(int size, std::vector<double> data)
        : size_(size), data_(std::move(data)) {}

    int size() const { return size_; }
    double operator()(int j, int q, int p) const {
        return data_[(static_cast<std::size_t>(j) * size_ + q) * size_ + p];
    }

private:
    int size_;
    std::vector<double> data_;
};

/// Computes e_{jqp} by quadrature; exact for the polynomial integrands in
/// scope. Requires at least ceil((3*order+1)/2) quadrature nodes.
TripleProducts triple_products(const GpcBasis& basis);

/// Galerkin projection of the random potential: column p holds
/// U_hat_p(x) = sum_i w_i U(x, z_i) Phi_p(z_i) on the flat grid.
Eigen::MatrixXd project_potential(const RandomPotential& U, const GpcBasis& basis,
                                  const Grid& grid);

/// Per-grid-point Galerkin coupling matrices A_U(x) with
/// a_pq(x) = sum_j U_hat_j(x) e_{jqp}, plus their cached spectral
/// factorizations A = Q diag(lambda) Q^T. Immutable after construction.
struct CouplingSet {
    GridPtr grid;
    int size = 0; // P
    std::vector<Eigen::MatrixXd> matrices;
    std::vector<Eigen::VectorXd> eigenvalues;
    std::vector<Eigen::MatrixXd> eigenvectors;
};

CouplingSet build_coupling(const Eigen::MatrixXd& potential_coeffs, const TripleProducts& triple,
                           const GridPtr& grid);

/// Vector of P gPC coefficient fields.
struct GpcState {
    std::vector<WaveField> coeffs;

    int size() const { return static_cast<int>(coeffs.size()); }
    const Grid& grid() const { return coeffs.front().grid(); }
    const GridPtr& grid_ptr() const { return coeffs.front().grid_ptr(); }
};

/// Deterministic initial data: psi_hat_1 = field, higher coefficients zero.
GpcState deterministic_state(const WaveField& field, int size);

/// Projects z-dependent initial data onto the basis by quadrature.
GpcState project_initial(const std::function<std::complex<double>(double, double)>& psi_in,
                         const GpcBasis& basis, const GridPtr& grid);

/// Exact propagator of the Galerkin-coupled potential ODE system: at every
/// grid point psi_vec <- Q diag(e^{-i lambda_i dt/eps}) Q^T psi_vec.
/// Pointwise unitary since A_U(x) is real symmetric.
GpcState random_potential_step(const GpcState& state, const CouplingSet& coupling, double dt,
                               double epsilon);

/// E[psi] = psi_hat_1 for an orthonormal basis with Phi_1 = 1.
WaveField mean_field(const GpcState& state);

/// E[|psi|^2](x) = sum_p |psi_hat_p(x)|^2.
std::vector<double> mean_density(const GpcState& state);

/// Discrete norms of the individual coefficient fields, in order; reports
/// the measured gPC decay.
std::vector<double> coefficient_norms(const GpcState& state);

} // namespace bdsg
