#include "bdsg/gpc.hpp"

#include "bdsg/errors.hpp"
#include "bdsg/parallel.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace bdsg {

namespace {
using cplx = std::complex<double>;
} // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_rule(int n) {
    if (n < 1) throw std::invalid_argument("quadrature needs at least one node");
    // Golub-Welsch on the Legendre Jacobi matrix; first eigenvector components
    // give the weights relative to mu_0 = integral of dz/2 = 1.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        const double b = i / std::sqrt(4.0 * i * i - 1.0);
        J(i, i - 1) = b;
        J(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success) throw EigensolveFailure("Gauss-Legendre rule eigensolve failed");
    std::vector<double> nodes(static_cast<std::size_t>(n));
    std::vector<double> weights(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        const double q = es.eigenvectors()(0, i);
        weights[static_cast<std::size_t>(i)] = q * q;
    }
    return {std::move(nodes), std::move(weights)};
}

GpcBasis::GpcBasis(int order, int quad_nodes) : order_(order) {
    if (order < 0) throw std::invalid_argument("gPC order must be >= 0");
    const int n = quad_nodes > 0 ? quad_nodes : 2 * order + 2;
    auto [nodes, weights] = gauss_legendre_rule(n);
    nodes_ = std::move(nodes);
    weights_ = std::move(weights);
}

double GpcBasis::evaluate(int p, double z) const {
    // Orthonormal Legendre: sqrt(2p+1) * P_p(z) via the three-term recurrence.
    if (p == 0) return 1.0;
    double prev = 1.0;
    double cur = z;
    for (int n = 1; n < p; ++n)
        std::tie(prev, cur) = std::make_pair(cur, ((2 * n + 1) * z * cur - n * prev) / (n + 1));
    return std::sqrt(2.0 * p + 1.0) * cur;
}

TripleProducts triple_products(const GpcBasis& basis) {
    const int P = basis.size();
    const int nq = basis.quad_size();
    if (2 * nq - 1 < 3 * basis.order())
        throw std::invalid_argument("quadrature with " + std::to_string(nq) +
                                    " nodes cannot integrate degree-" +
                                    std::to_string(3 * basis.order()) + " products exactly");

    Eigen::MatrixXd vals(nq, P);
    for (int i = 0; i < nq; ++i)
        for (int p = 0; p < P; ++p) vals(i, p) = basis.evaluate(p, basis.nodes()[static_cast<std::size_t>(i)]);

    std::vector<double> data(static_cast<std::size_t>(P) * P * P);
    for (int j = 0; j < P; ++j)
        for (int q = 0; q < P; ++q)
            for (int p = 0; p < P; ++p) {
                double sum = 0.0;
                for (int i = 0; i < nq; ++i)
                    sum += basis.weights()[static_cast<std::size_t>(i)] * vals(i, j) * vals(i, q) * vals(i, p);
                data[(static_cast<std::size_t>(j) * P + q) * P + p] = sum;
            }
    return TripleProducts(P, std::move(data));
}

Eigen::MatrixXd project_potential(const RandomPotential& U, const GpcBasis& basis,
                                  const Grid& grid) {
    const int P = basis.size();
    const int nq = basis.quad_size();
    const int n = grid.total_points();

    Eigen::MatrixXd vals(nq, P);
    for (int i = 0; i < nq; ++i)
        for (int p = 0; p < P; ++p) vals(i, p) = basis.evaluate(p, basis.nodes()[static_cast<std::size_t>(i)]);

    Eigen::MatrixXd coeffs(n, P);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t idx) {
        Eigen::VectorXd u(nq);
        for (int i = 0; i < nq; ++i)
            u(i) = basis.weights()[static_cast<std::size_t>(i)] *
                   U(grid.x_at(static_cast<int>(idx)), basis.nodes()[static_cast<std::size_t>(i)]);
        coeffs.row(static_cast<Eigen::Index>(idx)) = (vals.transpose() * u).transpose();
    });
    return coeffs;
}

CouplingSet build_coupling(const Eigen::MatrixXd& potential_coeffs, const TripleProducts& triple,
                           const GridPtr& grid) {
    const int P = triple.size();
    if (potential_coeffs.cols() != P)
        throw GridMismatch("potential coefficient count does not match basis size");
    if (potential_coeffs.rows() != grid->total_points())
        throw GridMismatch("potential coefficient rows do not match grid");

    CouplingSet set;
    set.grid = grid;
    set.size = P;
    const std::size_t n = static_cast<std::size_t>(grid->total_points());
    set.matrices.resize(n);
    set.eigenvalues.resize(n);
    set.eigenvectors.resize(n);

    parallel_for(n, [&](std::size_t idx) {
        Eigen::MatrixXd A(P, P);
        for (int p = 0; p < P; ++p)
            for (int q = 0; q < P; ++q) {
                double sum = 0.0;
                for (int j = 0; j < P; ++j)
                    sum += potential_coeffs(static_cast<Eigen::Index>(idx), j) * triple(j, q, p);
                A(p, q) = sum;
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
        if (es.info() != Eigen::Success)
            throw EigensolveFailure("coupling matrix eigensolve failed at grid index " +
                                    std::to_string(idx));
        set.matrices[idx] = std::move(A);
        set.eigenvalues[idx] = es.eigenvalues();
        set.eigenvectors[idx] = es.eigenvectors();
    });
    return set;
}

GpcState deterministic_state(const WaveField& field, int size) {
    GpcState state;
    state.coeffs.reserve(static_cast<std::size_t>(size));
    state.coeffs.push_back(field);
    for (int p = 1; p < size; ++p) state.coeffs.emplace_back(field.grid_ptr());
    return state;
}

GpcState project_initial(const std::function<cplx(double, double)>& psi_in, const GpcBasis& basis,
                         const GridPtr& grid) {
    const int P = basis.size();
    const int nq = basis.quad_size();
    GpcState state;
    state.coeffs.reserve(static_cast<std::size_t>(P));
    for (int p = 0; p < P; ++p) state.coeffs.emplace_back(grid);
    for (int idx = 0; idx < grid->total_points(); ++idx) {
        for (int i = 0; i < nq; ++i) {
            const double z = basis.nodes()[static_cast<std::size_t>(i)];
            const cplx v = basis.weights()[static_cast<std::size_t>(i)] * psi_in(grid->x_at(idx), z);
            for (int p = 0; p < P; ++p)
                state.coeffs[static_cast<std::size_t>(p)][static_cast<std::size_t>(idx)] +=
                    v * basis.evaluate(p, z);
        }
    }
    return state;
}

GpcState random_potential_step(const GpcState& state, const CouplingSet& coupling, double dt,
                               double epsilon) {
    if (!(state.grid() == *coupling.grid))
        throw GridMismatch("state and coupling grids differ");
    if (state.size() != coupling.size)
        throw GridMismatch("state and coupling basis sizes differ");

    const int P = coupling.size;
    GpcState out;
    out.coeffs.reserve(static_cast<std::size_t>(P));
    for (int p = 0; p < P; ++p) out.coeffs.emplace_back(state.grid_ptr());

    const std::size_t n = static_cast<std::size_t>(state.grid().total_points());
    const double factor = -dt / epsilon;
    parallel_for(n, [&](std::size_t idx) {
        Eigen::VectorXcd v(P);
        for (int p = 0; p < P; ++p) v(p) = state.coeffs[static_cast<std::size_t>(p)][idx];
        Eigen::VectorXcd u = coupling.eigenvectors[idx].transpose() * v;
        for (int i = 0; i < P; ++i)
            u(i) *= std::polar(1.0, factor * coupling.eigenvalues[idx](i));
        v = coupling.eigenvectors[idx] * u;
        for (int p = 0; p < P; ++p) out.coeffs[static_cast<std::size_t>(p)][idx] = v(p);
    });
    return out;
}

WaveField mean_field(const GpcState& state) { return state.coeffs.front(); }

std::vector<double> mean_density(const GpcState& state) {
    const std::size_t n = static_cast<std::size_t>(state.grid().total_points());
    std::vector<double> density(n, 0.0);
    for (const auto& field : state.coeffs) {
        auto v = field.values();
        for (std::size_t i = 0; i < n; ++i) density[i] += std::norm(v[i]);
    }
    return density;
}

std::vector<double> coefficient_norms(const GpcState& state) {
    std::vector<double> norms;
    norms.reserve(state.coeffs.size());
    for (const auto& field : state.coeffs) norms.push_back(discrete_norm(field));
    return norms;
}

} // namespace bdsg
