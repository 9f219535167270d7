#include "bdsg/grid.hpp"

#include "bdsg/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bdsg {

Grid::Grid(double epsilon, int points_per_cell) {
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw NonIntegerCellCount("epsilon must lie in (0, 1], got " + std::to_string(epsilon));
    const double inv = 1.0 / epsilon;
    const double cells = std::round(inv);
    if (std::abs(inv - cells) > 1e-9)
        throw NonIntegerCellCount("1/epsilon = " + std::to_string(inv) + " is not an integer");
    if (points_per_cell < 4 || points_per_cell % 2 != 0)
        throw InvalidResolution("points per cell must be even and >= 4, got " +
                                std::to_string(points_per_cell));

    epsilon_ = epsilon;
    cells_ = static_cast<int>(cells);
    points_per_cell_ = points_per_cell;
    if (std::abs(cells_ * epsilon_ - 1.0) > 1e-12)
        throw NonIntegerCellCount("cells * epsilon deviates from 1 beyond 1e-12");

    const double two_pi = 2.0 * std::numbers::pi;
    dx_ = two_pi / (static_cast<double>(cells_) * points_per_cell_);

    k_.resize(static_cast<std::size_t>(cells_));
    for (int ell = 0; ell < cells_; ++ell)
        k_[static_cast<std::size_t>(ell)] = -0.5 + static_cast<double>(ell) / cells_;

    y_.resize(static_cast<std::size_t>(points_per_cell_));
    for (int r = 0; r < points_per_cell_; ++r)
        y_[static_cast<std::size_t>(r)] = two_pi * r / points_per_cell_;

    x_.resize(static_cast<std::size_t>(cells_) * points_per_cell_);
    for (int ell = 0; ell < cells_; ++ell)
        for (int r = 0; r < points_per_cell_; ++r)
            x_[static_cast<std::size_t>(ell) * points_per_cell_ + r] =
                epsilon_ * (two_pi * ell + y_[static_cast<std::size_t>(r)]);
}

GridPtr make_grid(double epsilon, int points_per_cell) {
    return std::make_shared<const Grid>(epsilon, points_per_cell);
}

} // namespace bdsg
