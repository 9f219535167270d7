#pragma once

#include "bdsg/grid.hpp"

#include <complex>
#include <span>
#include <vector>

namespace bdsg {

/// One complex-valued discrete wavefunction psi_{l,r} stored row-major in
/// the cell index, so the flat layout coincides with the global x ordering.
class WaveField {
public:
    explicit WaveField(GridPtr grid)
        : grid_(std::move(grid)),
          values_(static_cast<std::size_t>(grid_->total_points())) {}

    WaveField(GridPtr grid, std::vector<std::complex<double>> values);

    std::complex<double>& operator()(int ell, int r) {
        return values_[static_cast<std::size_t>(grid_->index(ell, r))];
    }
    std::complex<double> operator()(int ell, int r) const {
        return values_[static_cast<std::size_t>(grid_->index(ell, r))];
    }
    std::complex<double>& operator[](std::size_t i) { return values_[i]; }
    std::complex<double> operator[](std::size_t i) const { return values_[i]; }

    std::span<std::complex<double>> values() { return values_; }
    std::span<const std::complex<double>> values() const { return values_; }

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    int size() const { return grid_->total_points(); }

private:
    GridPtr grid_;
    std::vector<std::complex<double>> values_;
};

/// sqrt( (2*pi/(L*R)) * sum |psi|^2 )
double discrete_norm(const WaveField& field);

/// Same norm for a raw array with an explicit quadrature weight.
double discrete_norm(std::span<const std::complex<double>> values, double weight);
double discrete_norm(std::span<const double> values, double weight);

/// The Gaussian profile (10/pi)^{1/4} exp(-5 (x-pi)^2) used as initial datum.
double gaussian_profile(double x);

/// Gaussian wave packet sampled on the grid and rescaled to unit discrete
/// norm, so mass-ratio diagnostics start exactly at 1.
WaveField initial_gaussian(const GridPtr& grid);

} // namespace bdsg
