#include "bdsg/diagnostics.hpp"

#include "bdsg/errors.hpp"
#include "bdsg/fft.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace bdsg {

namespace {
using cplx = std::complex<double>;
} // namespace

std::vector<cplx> spectral_derivative(std::span<const cplx> values) {
    const int n = static_cast<int>(values.size());
    std::vector<cplx> buf(values.begin(), values.end());
    fft::forward(buf);
    for (int a = 0; a < n; ++a) {
        int xi = (a <= n / 2 - 1) ? a : a - n;
        if (a == n / 2) xi = 0; // Nyquist mode carries no odd derivative
        buf[static_cast<std::size_t>(a)] *= cplx(0.0, static_cast<double>(xi));
    }
    fft::backward(buf);
    const double inv_n = 1.0 / n;
    for (auto& v : buf) v *= inv_n;
    return buf;
}

SolutionStats stats_from(const GpcState& state) {
    return SolutionStats{state.grid_ptr(), mean_field(state), mean_density(state)};
}

double total_mass(const GpcState& state) {
    double m = 0.0;
    for (const auto& field : state.coeffs) {
        const double n = discrete_norm(field);
        m += n * n;
    }
    return m;
}

double total_energy(const GpcState& state, std::span<const double> lattice_potential_on_grid,
                    const CouplingSet& coupling, double epsilon) {
    const Grid& grid = state.grid();
    const std::size_t n = static_cast<std::size_t>(grid.total_points());
    if (lattice_potential_on_grid.size() != n)
        throw GridMismatch("lattice potential samples do not match grid");
    if (!(grid == *coupling.grid) || state.size() != coupling.size)
        throw GridMismatch("state and coupling are inconsistent");

    const int P = state.size();
    double kinetic = 0.0;
    double lattice = 0.0;
    for (const auto& field : state.coeffs) {
        const auto deriv = spectral_derivative(field.values());
        auto v = field.values();
        for (std::size_t i = 0; i < n; ++i) {
            kinetic += std::norm(deriv[i]);
            lattice += lattice_potential_on_grid[i] * std::norm(v[i]);
        }
    }

    double coupling_energy = 0.0;
    double imag_residue = 0.0;
    Eigen::VectorXcd v(P);
    for (std::size_t idx = 0; idx < n; ++idx) {
        for (int p = 0; p < P; ++p) v(p) = state.coeffs[static_cast<std::size_t>(p)][idx];
        const cplx quad = v.dot(coupling.matrices[idx] * v); // v^H A v
        coupling_energy += quad.real();
        imag_residue += quad.imag();
    }

    const double w = grid.dx();
    const double energy =
        w * (0.5 * epsilon * epsilon * kinetic + lattice + coupling_energy);
    if (std::abs(w * imag_residue) > 1e-8 * std::abs(energy))
        throw NonRealEnergy("energy imaginary residue " + std::to_string(w * imag_residue));
    return energy;
}

double second_moment(const GpcState& state) {
    const Grid& grid = state.grid();
    const auto density = mean_density(state);
    double s = 0.0;
    for (int i = 0; i < grid.total_points(); ++i) {
        const double x = grid.x_at(i);
        s += x * x * density[static_cast<std::size_t>(i)];
    }
    return grid.dx() * s;
}

double field_energy(const WaveField& field, std::span<const double> total_potential_on_grid,
                    double epsilon) {
    const std::size_t n = static_cast<std::size_t>(field.size());
    if (total_potential_on_grid.size() != n)
        throw GridMismatch("potential samples do not match grid");
    const auto deriv = spectral_derivative(field.values());
    auto v = field.values();
    double kinetic = 0.0;
    double potential = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        kinetic += std::norm(deriv[i]);
        potential += total_potential_on_grid[i] * std::norm(v[i]);
    }
    return field.grid().dx() * (0.5 * epsilon * epsilon * kinetic + potential);
}

ErrorMetrics error_metrics(const SolutionStats& candidate, const SolutionStats& reference) {
    if (!(*candidate.grid == *reference.grid))
        throw GridMismatch("error metrics need a common grid");
    const std::size_t n = candidate.density.size();
    auto a = candidate.mean.values();
    auto b = reference.mean.values();

    double mean_sq = 0.0;
    double den_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_sq += std::norm(b[i] - a[i]);
        const double d = std::sqrt(reference.density[i]) - std::sqrt(candidate.density[i]);
        den_sq += d * d;
    }
    const double w = candidate.grid->dx();
    return ErrorMetrics{std::sqrt(w * mean_sq), std::sqrt(w * den_sq)};
}

} // namespace bdsg
