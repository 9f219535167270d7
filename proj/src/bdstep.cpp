#include "bdsg/bdstep.hpp"

#include "bdsg/errors.hpp"
#include "bdsg/fft.hpp"
#include "bdsg/parallel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace bdsg {

namespace {
using cplx = std::complex<double>;
constexpr double kSqrt2Pi = 2.5066282746310005024; // sqrt(2*pi)

void check_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) throw GridMismatch(std::string("grid mismatch in ") + what);
}

// k_l = -1/2 + l/L turns the across-cell sums into plain DFTs of the
// (-1)^j modulated sequences; the modulation implements the -1/2 shift.
} // namespace

WaveField cell_transform(const WaveField& field) {
    const Grid& g = field.grid();
    const int L = g.cells();
    const int R = g.points_per_cell();
    WaveField out(field.grid_ptr());
    if (L == 1) {
        std::copy(field.values().begin(), field.values().end(), out.values().begin());
        return out;
    }
    parallel_for(static_cast<std::size_t>(R), [&](std::size_t r) {
        std::vector<cplx> buf(static_cast<std::size_t>(L));
        for (int j = 0; j < L; ++j) {
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            buf[static_cast<std::size_t>(j)] = sign * field(j, static_cast<int>(r));
        }
        fft::forward(buf);
        for (int ell = 0; ell < L; ++ell)
            out(ell, static_cast<int>(r)) = buf[static_cast<std::size_t>(ell)];
    });
    return out;
}

WaveField inverse_cell_transform(const WaveField& transformed) {
    const Grid& g = transformed.grid();
    const int L = g.cells();
    const int R = g.points_per_cell();
    WaveField out(transformed.grid_ptr());
    if (L == 1) {
        std::copy(transformed.values().begin(), transformed.values().end(), out.values().begin());
        return out;
    }
    const double inv_L = 1.0 / L;
    parallel_for(static_cast<std::size_t>(R), [&](std::size_t r) {
        std::vector<cplx> buf(static_cast<std::size_t>(L));
        for (int j = 0; j < L; ++j) buf[static_cast<std::size_t>(j)] = transformed(j, static_cast<int>(r));
        fft::backward(buf);
        for (int ell = 0; ell < L; ++ell) {
            const double sign = (ell % 2 == 0) ? 1.0 : -1.0;
            out(ell, static_cast<int>(r)) = inv_L * sign * buf[static_cast<std::size_t>(ell)];
        }
    });
    return out;
}

BlochCoefficients analyze(const WaveField& transformed, const LatticeTable& table) {
    check_same_grid(transformed.grid(), table.grid(), "analyze");
    const Grid& g = transformed.grid();
    const int L = g.cells();
    const int R = g.points_per_cell();
    const int M = table.bands();

    BlochCoefficients coeffs;
    coeffs.C.resize(M, L);
    const double scale = kSqrt2Pi / R;

    parallel_for(static_cast<std::size_t>(L), [&](std::size_t ell) {
        const double k = g.k(static_cast<int>(ell));
        Eigen::VectorXcd spectrum(R);
        {
            std::vector<cplx> buf(static_cast<std::size_t>(R));
            for (int r = 0; r < R; ++r) {
                const double sign = (r % 2 == 0) ? 1.0 : -1.0;
                buf[static_cast<std::size_t>(r)] =
                    sign * std::polar(1.0, -k * g.y(r)) * transformed(static_cast<int>(ell), r);
            }
            fft::forward(buf);
            for (int a = 0; a < R; ++a) spectrum(a) = buf[static_cast<std::size_t>(a)];
        }
        coeffs.C.col(static_cast<Eigen::Index>(ell)) =
            scale * (table.chi_hat(static_cast<int>(ell)).adjoint() * spectrum);
    });
    return coeffs;
}

BlochCoefficients evolve_bands(const BlochCoefficients& coeffs, const LatticeTable& table,
                               double dt, double epsilon) {
    BlochCoefficients out;
    out.C = coeffs.C;
    const int M = static_cast<int>(out.C.rows());
    const int L = static_cast<int>(out.C.cols());
    for (int ell = 0; ell < L; ++ell)
        for (int m = 0; m < M; ++m)
            out.C(m, ell) *= std::polar(1.0, -table.energy(m, ell) * dt / epsilon);
    return out;
}

WaveField synthesize(const BlochCoefficients& coeffs, const LatticeTable& table) {
    const Grid& g = table.grid();
    const int L = g.cells();
    const int R = g.points_per_cell();

    WaveField out(table.grid_ptr());
    const double scale = 1.0 / kSqrt2Pi;

    parallel_for(static_cast<std::size_t>(L), [&](std::size_t ell) {
        const double k = g.k(static_cast<int>(ell));
        const Eigen::VectorXcd spectrum =
            table.chi_hat(static_cast<int>(ell)) * coeffs.C.col(static_cast<Eigen::Index>(ell));
        std::vector<cplx> buf(static_cast<std::size_t>(R));
        for (int a = 0; a < R; ++a) buf[static_cast<std::size_t>(a)] = spectrum(a);
        fft::backward(buf);
        for (int r = 0; r < R; ++r) {
            const double sign = (r % 2 == 0) ? 1.0 : -1.0;
            out(static_cast<int>(ell), r) =
                scale * sign * std::polar(1.0, k * g.y(r)) * buf[static_cast<std::size_t>(r)];
        }
    });
    return out;
}

WaveField bd_lattice_step(const WaveField& field, const LatticeTable& table, double dt,
                          double epsilon) {
    check_same_grid(field.grid(), table.grid(), "bd_lattice_step");
    const WaveField transformed = cell_transform(field);
    const BlochCoefficients c0 = analyze(transformed, table);
    const BlochCoefficients c1 = evolve_bands(c0, table, dt, epsilon);
    const WaveField evolved = synthesize(c1, table);
    return inverse_cell_transform(evolved);
}

WaveField potential_phase_step(const WaveField& field, std::span<const double> potential_on_grid,
                               double dt, double epsilon) {
    if (potential_on_grid.size() != static_cast<std::size_t>(field.size()))
        throw GridMismatch("potential sample array does not match grid");
    WaveField out(field.grid_ptr());
    auto in = field.values();
    auto dst = out.values();
    const double factor = -dt / epsilon;
    for (std::size_t i = 0; i < in.size(); ++i)
        dst[i] = in[i] * std::polar(1.0, factor * potential_on_grid[i]);
    return out;
}

WaveField bd_step(const WaveField& field, const LatticeTable& table,
                  std::span<const double> potential_on_grid, double dt, double epsilon,
                  Splitting splitting) {
    switch (splitting) {
    case Splitting::Strang: {
        WaveField half = potential_phase_step(field, potential_on_grid, 0.5 * dt, epsilon);
        half = bd_lattice_step(half, table, dt, epsilon);
        return potential_phase_step(half, potential_on_grid, 0.5 * dt, epsilon);
    }
    case Splitting::LatticeThenPotential: {
        const WaveField mid = bd_lattice_step(field, table, dt, epsilon);
        return potential_phase_step(mid, potential_on_grid, dt, epsilon);
    }
    case Splitting::PotentialThenLattice: {
        const WaveField mid = potential_phase_step(field, potential_on_grid, dt, epsilon);
        return bd_lattice_step(mid, table, dt, epsilon);
    }
    }
    throw std::logic_error("unreachable splitting");
}

} // namespace bdsg
