#include "bdsg/wavefield.hpp"

#include "bdsg/errors.hpp"

#include <cmath>
#include <numbers>

namespace bdsg {

WaveField::WaveField(GridPtr grid, std::vector<std::complex<double>> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(grid_->total_points()))
        throw GridMismatch("value array size does not match grid");
}

double discrete_norm(std::span<const std::complex<double>> values, double weight) {
    double sum = 0.0;
    for (const auto& v : values) sum += std::norm(v);
    return std::sqrt(weight * sum);
}

double discrete_norm(std::span<const double> values, double weight) {
    double sum = 0.0;
    for (double v : values) sum += v * v;
    return std::sqrt(weight * sum);
}

double discrete_norm(const WaveField& field) {
    return discrete_norm(field.values(), field.grid().dx());
}

double gaussian_profile(double x) {
    const double d = x - std::numbers::pi;
    return std::pow(10.0 / std::numbers::pi, 0.25) * std::exp(-5.0 * d * d);
}

WaveField initial_gaussian(const GridPtr& grid) {
    WaveField field(grid);
    auto v = field.values();
    for (int i = 0; i < grid->total_points(); ++i)
        v[static_cast<std::size_t>(i)] = gaussian_profile(grid->x_at(i));
    const double scale = 1.0 / discrete_norm(field);
    for (auto& c : v) c *= scale;
    return field;
}

} // namespace bdsg
