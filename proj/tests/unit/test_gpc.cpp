#include "bdsg/bdstep.hpp"
#include "bdsg/gpc.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace bdsg;
namespace tst = bdsg::testing;

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

// test-local matrix exponential (scaling and squaring + Taylor); oracle for
// the factorized propagator
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& A) {
    const double norm = A.cwiseAbs().sum();
    int squarings = 0;
    Eigen::MatrixXcd B = A;
    while (B.cwiseAbs().maxCoeff() > 0.5) {
        B *= 0.5;
        ++squarings;
    }
    (void)norm;
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(A.rows(), A.cols());
    Eigen::MatrixXcd term = result;
    for (int k = 1; k <= 24; ++k) {
        term = (term * B) / static_cast<double>(k);
        result += term;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}
} // namespace

TEST_SUITE("gpc") {

TEST_CASE("two-node Gauss rule") {
    const auto [nodes, weights] = gauss_legendre_rule(2);
    CHECK(nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(weights[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(weights[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("basis orthonormality under the quadrature") {
    const GpcBasis basis(8);
    REQUIRE(basis.quad_size() == 18);
    for (int p = 0; p < basis.size(); ++p)
        for (int q = 0; q < basis.size(); ++q) {
            double sum = 0.0;
            for (int i = 0; i < basis.quad_size(); ++i)
                sum += basis.weights()[static_cast<std::size_t>(i)] *
                       basis.evaluate(p, basis.nodes()[static_cast<std::size_t>(i)]) *
                       basis.evaluate(q, basis.nodes()[static_cast<std::size_t>(i)]);
            CHECK(std::abs(sum - (p == q ? 1.0 : 0.0)) <= 1e-12);
        }
}

TEST_CASE("orthonormal Legendre values") {
    const GpcBasis basis(4);
    CHECK(basis.evaluate(0, 0.7) == 1.0);
    CHECK(basis.evaluate(1, 0.7) == doctest::Approx(std::sqrt(3.0) * 0.7).epsilon(1e-14));
    const double legendre2 = 0.5 * (3.0 * 0.7 * 0.7 - 1.0);
    CHECK(basis.evaluate(2, 0.7) == doctest::Approx(std::sqrt(5.0) * legendre2).epsilon(1e-14));
}

TEST_CASE("triple products") {
    const GpcBasis basis(4);
    const auto e = triple_products(basis);

    SUBCASE("contraction with the constant polynomial is the identity") {
        for (int j = 0; j < e.size(); ++j)
            for (int q = 0; q < e.size(); ++q)
                CHECK(std::abs(e(j, q, 0) - (j == q ? 1.0 : 0.0)) <= 1e-13);
    }
    SUBCASE("odd integrand vanishes") { CHECK(std::abs(e(1, 1, 1)) <= 1e-14); }
    SUBCASE("e_223 equals 2/sqrt(5)") {
        const double frozen = 0.89442719099991587856; // 2/sqrt(5)
        CHECK(std::abs(e(1, 1, 2) - frozen) <= 1e-12);
        // independent quadrature oracle
        const double oracle = tst::simpson(
            [&](double z) {
                return 0.5 * basis.evaluate(1, z) * basis.evaluate(1, z) * basis.evaluate(2, z);
            },
            -1.0, 1.0, 200000);
        CHECK(std::abs(e(1, 1, 2) - oracle) <= 1e-12);
    }
    SUBCASE("full tensor matches the integration oracle") {
        for (int j = 0; j < e.size(); ++j)
            for (int q = 0; q < e.size(); ++q)
                for (int p = 0; p < e.size(); ++p) {
                    const double oracle = tst::simpson(
                        [&](double z) {
                            return 0.5 * basis.evaluate(j, z) * basis.evaluate(q, z) *
                                   basis.evaluate(p, z);
                        },
                        -1.0, 1.0, 20000);
                    CHECK(std::abs(e(j, q, p) - oracle) <= 1e-9);
                }
    }
    SUBCASE("permutation symmetry up to order 8") {
        const GpcBasis b8(8);
        const auto e8 = triple_products(b8);
        for (int j = 0; j < e8.size(); ++j)
            for (int q = j; q < e8.size(); ++q)
                for (int p = q; p < e8.size(); ++p) {
                    CHECK(e8(j, q, p) == doctest::Approx(e8(q, j, p)).epsilon(1e-13));
                    CHECK(e8(j, q, p) == doctest::Approx(e8(p, q, j)).epsilon(1e-13));
                    CHECK(e8(j, q, p) == doctest::Approx(e8(j, p, q)).epsilon(1e-13));
                }
    }
    SUBCASE("insufficient quadrature is rejected") {
        CHECK_THROWS_AS(triple_products(GpcBasis(4, 3)), std::invalid_argument);
    }
}

TEST_CASE("potential projection") {
    const auto grid = make_grid(0.25, 16);
    SUBCASE("linear-in-z potential has two exact coefficients") {
        const GpcBasis basis(3);
        const auto U = RandomPotential::linear_force(); // (1 + 0.1 z) x
        const auto coeffs = project_potential(U, basis, *grid);
        for (int i = 0; i < grid->total_points(); ++i) {
            const double x = grid->x_at(i);
            CHECK(std::abs(coeffs(i, 0) - x) <= 1e-13 * (1.0 + x));
            CHECK(std::abs(coeffs(i, 1) - 0.1 * x / std::sqrt(3.0)) <= 1e-13);
            CHECK(std::abs(coeffs(i, 2)) <= 1e-13);
            CHECK(std::abs(coeffs(i, 3)) <= 1e-13);
        }
    }
    SUBCASE("z-independent potential projects onto the constant") {
        const GpcBasis basis(2);
        const auto U = RandomPotential::custom([](double x, double) { return std::sin(x); });
        const auto coeffs = project_potential(U, basis, *grid);
        for (int i = 0; i < grid->total_points(); ++i) {
            CHECK(std::abs(coeffs(i, 0) - std::sin(grid->x_at(i))) <= 1e-14);
            CHECK(std::abs(coeffs(i, 1)) <= 1e-14);
            CHECK(std::abs(coeffs(i, 2)) <= 1e-14);
        }
    }
    SUBCASE("even |z| dependence has no odd coefficients") {
        const GpcBasis basis(4);
        const auto U = RandomPotential::anderson_cosine(5.0);
        const auto coeffs = project_potential(U, basis, *grid);
        for (int i = 0; i < grid->total_points(); ++i) {
            CHECK(std::abs(coeffs(i, 1)) <= 1e-13);
            CHECK(std::abs(coeffs(i, 3)) <= 1e-13);
        }
    }
}

TEST_CASE("coupling matrices") {
    const auto grid = make_grid(0.25, 16);
    SUBCASE("scalar case reduces to the mean potential") {
        const GpcBasis basis(0);
        const auto U = RandomPotential::harmonic_noise();
        const auto coeffs = project_potential(U, basis, *grid);
        const auto coupling = build_coupling(coeffs, triple_products(basis), grid);
        for (int i = 0; i < grid->total_points(); ++i) {
            // E_z[U(x, z)] for the harmonic-noise form is |x-pi|^2 + 0.5
            const double x = grid->x_at(i);
            const double want = (x - kPi) * (x - kPi) + 0.5;
            CHECK(std::abs(coupling.matrices[static_cast<std::size_t>(i)](0, 0) - want) <= 1e-12);
        }
    }
    SUBCASE("z-independent potential gives U(x) * I") {
        const GpcBasis basis(3);
        const auto U = RandomPotential::custom([](double x, double) { return std::cos(x); });
        const auto coupling =
            build_coupling(project_potential(U, basis, *grid), triple_products(basis), grid);
        for (int i = 0; i < grid->total_points(); i += 7) {
            const Eigen::MatrixXd want =
                std::cos(grid->x_at(i)) * Eigen::MatrixXd::Identity(4, 4);
            CHECK((coupling.matrices[static_cast<std::size_t>(i)] - want).cwiseAbs().maxCoeff() <=
                  1e-13);
        }
    }
    SUBCASE("linear force at x = pi") {
        const GpcBasis basis(1);
        const auto U = RandomPotential::linear_force();
        const auto coupling =
            build_coupling(project_potential(U, basis, *grid), triple_products(basis), grid);
        const int mid = grid->total_points() / 2;
        REQUIRE(grid->x_at(mid) == doctest::Approx(kPi).epsilon(1e-15));
        const auto& A = coupling.matrices[static_cast<std::size_t>(mid)];
        CHECK(std::abs(A(0, 0) - kPi) <= 1e-12);
        CHECK(std::abs(A(1, 1) - kPi) <= 1e-12);
        CHECK(std::abs(A(0, 1) - 0.1 * kPi / std::sqrt(3.0)) <= 1e-12);
        CHECK(std::abs(A(1, 0) - A(0, 1)) <= 1e-14);
    }
    SUBCASE("symmetry and factorization residual") {
        const GpcBasis basis(4);
        const auto coupling = build_coupling(
            project_potential(RandomPotential::harmonic_noise(), basis, *grid),
            triple_products(basis), grid);
        for (int i = 0; i < grid->total_points(); i += 5) {
            const auto& A = coupling.matrices[static_cast<std::size_t>(i)];
            CHECK((A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
            const Eigen::MatrixXd rebuilt =
                coupling.eigenvectors[static_cast<std::size_t>(i)] *
                coupling.eigenvalues[static_cast<std::size_t>(i)].asDiagonal() *
                coupling.eigenvectors[static_cast<std::size_t>(i)].transpose();
            CHECK((A - rebuilt).cwiseAbs().maxCoeff() <= 1e-10);
        }
    }
}

TEST_CASE("random potential propagator") {
    const auto grid = make_grid(0.25, 16);
    const double eps = grid->epsilon();

    SUBCASE("scalar case equals the phase step") {
        const GpcBasis basis(0);
        const auto U = RandomPotential::harmonic_noise();
        const auto coeffs = project_potential(U, basis, *grid);
        const auto coupling = build_coupling(coeffs, triple_products(basis), grid);
        const auto psi = tst::random_field(grid, 21);
        GpcState state = deterministic_state(psi, 1);
        const auto moved = random_potential_step(state, coupling, 0.2, eps);

        std::vector<double> mean_pot(static_cast<std::size_t>(grid->total_points()));
        for (int i = 0; i < grid->total_points(); ++i)
            mean_pot[static_cast<std::size_t>(i)] = coeffs(i, 0);
        const auto direct = potential_phase_step(psi, mean_pot, 0.2, eps);
        CHECK(tst::max_abs_diff(moved.coeffs[0], direct) <= 1e-14);
    }

    const GpcBasis basis(4);
    const auto coupling = build_coupling(
        project_potential(RandomPotential::harmonic_noise(), basis, *grid),
        triple_products(basis), grid);
    GpcState state;
    for (int p = 0; p < basis.size(); ++p)
        state.coeffs.push_back(tst::random_field(grid, 30 + static_cast<unsigned>(p)));

    SUBCASE("dt = 0 is the identity") {
        const auto same = random_potential_step(state, coupling, 0.0, eps);
        for (int p = 0; p < basis.size(); ++p)
            CHECK(tst::max_abs_diff(same.coeffs[static_cast<std::size_t>(p)],
                                    state.coeffs[static_cast<std::size_t>(p)]) <= 1e-14);
    }
    SUBCASE("pointwise unitarity") {
        const auto moved = random_potential_step(state, coupling, 0.37, eps);
        for (int i = 0; i < grid->total_points(); ++i) {
            double before = 0.0, after = 0.0;
            for (int p = 0; p < basis.size(); ++p) {
                before += std::norm(state.coeffs[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)]);
                after += std::norm(moved.coeffs[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)]);
            }
            CHECK(std::abs(after / before - 1.0) <= 1e-12);
        }
    }
    SUBCASE("matches a direct matrix exponential at one point") {
        const double dt = 0.29;
        const auto moved = random_potential_step(state, coupling, dt, eps);
        const std::size_t idx = 37;
        Eigen::VectorXcd v(basis.size());
        for (int p = 0; p < basis.size(); ++p)
            v(p) = state.coeffs[static_cast<std::size_t>(p)][idx];
        const Eigen::MatrixXcd propagator =
            expm(cplx(0.0, -dt / eps) * coupling.matrices[idx].cast<cplx>());
        const Eigen::VectorXcd want = propagator * v;
        for (int p = 0; p < basis.size(); ++p)
            CHECK(std::abs(moved.coeffs[static_cast<std::size_t>(p)][idx] - want(p)) <= 1e-12);
    }
}

TEST_CASE("moments of the state") {
    const auto grid = make_grid(0.25, 16);
    const auto psi = initial_gaussian(grid);
    const GpcState det = deterministic_state(psi, 3);

    SUBCASE("deterministic density is |psi_1|^2") {
        const auto density = mean_density(det);
        for (int i = 0; i < grid->total_points(); ++i)
            CHECK(density[static_cast<std::size_t>(i)] ==
                  doctest::Approx(std::norm(psi[static_cast<std::size_t>(i)])).epsilon(1e-14));
        CHECK(tst::max_abs_diff(mean_field(det), psi) == 0.0);
    }
    SUBCASE("zero mean with positive density") {
        GpcState state;
        state.coeffs.emplace_back(grid); // psi_1 = 0
        state.coeffs.push_back(psi);
        CHECK(discrete_norm(mean_field(state)) == 0.0);
        double total = 0.0;
        for (double d : mean_density(state)) total += d;
        CHECK(total > 0.0);
    }
    SUBCASE("density integrates to the total mass") {
        GpcState state;
        state.coeffs.push_back(tst::random_field(grid, 41));
        state.coeffs.push_back(tst::random_field(grid, 42));
        double mass = 0.0;
        for (double d : mean_density(state)) mass += d;
        mass *= grid->dx();
        double want = 0.0;
        for (const auto& c : state.coeffs) {
            const double n = discrete_norm(c);
            want += n * n;
        }
        CHECK(mass == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("random initial data projects through the quadrature") {
    const auto grid = make_grid(0.5, 8);
    const GpcBasis basis(3);
    const auto state = project_initial(
        [](double x, double z) { return std::complex<double>(std::cos(x) * (1.0 + z), 0.0); },
        basis, grid);
    for (int i = 0; i < grid->total_points(); ++i) {
        const double f = std::cos(grid->x_at(i));
        CHECK(std::abs(state.coeffs[0][static_cast<std::size_t>(i)] - f) <= 1e-13);
        CHECK(std::abs(state.coeffs[1][static_cast<std::size_t>(i)] - f / std::sqrt(3.0)) <= 1e-13);
        CHECK(std::abs(state.coeffs[2][static_cast<std::size_t>(i)]) <= 1e-13);
        CHECK(std::abs(state.coeffs[3][static_cast<std::size_t>(i)]) <= 1e-13);
    }
}

} // TEST_SUITE
