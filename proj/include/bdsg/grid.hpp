#pragma once

#include <memory>
#include <span>
#include <vector>

namespace bdsg {

/// Coupled spatial/quasimomentum discretization of the domain [0, 2*pi]:
/// L lattice cells of size 2*pi*eps with R points each, so the spatial step
/// is uniformly 2*pi/(L*R). Quasimomenta k_l = -1/2 + l/L (l = 0..L-1) tile
/// the Brillouin zone [-1/2, 1/2). Immutable after construction.
class Grid {
public:
    Grid(double epsilon, int points_per_cell);

    double epsilon() const { return epsilon_; }
    int cells() const { return cells_; }
    int points_per_cell() const { return points_per_cell_; }
    int total_points() const { return cells_ * points_per_cell_; }

    /// Uniform spatial step 2*pi/(L*R); also the quadrature weight of the
    /// discrete L2 norm.
    double dx() const { return dx_; }

    double k(int ell) const { return k_[static_cast<std::size_t>(ell)]; }
    double y(int r) const { return y_[static_cast<std::size_t>(r)]; }
    double x(int ell, int r) const {
        return x_[static_cast<std::size_t>(ell) * points_per_cell_ + r];
    }
    double x_at(int flat_index) const { return x_[static_cast<std::size_t>(flat_index)]; }

    std::span<const double> k_nodes() const { return k_; }
    std::span<const double> y_nodes() const { return y_; }
    std::span<const double> x_nodes() const { return x_; }

    int index(int ell, int r) const { return ell * points_per_cell_ + r; }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.epsilon_ == b.epsilon_ && a.cells_ == b.cells_ &&
               a.points_per_cell_ == b.points_per_cell_;
    }

private:
    double epsilon_;
    int cells_;
    int points_per_cell_;
    double dx_;
    std::vector<double> k_;
    std::vector<double> y_;
    std::vector<double> x_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds the grid for a given semiclassical parameter. Throws
/// NonIntegerCellCount unless 1/epsilon is an integer (to 1e-9) and
/// InvalidResolution unless points_per_cell is even and >= 4.
GridPtr make_grid(double epsilon, int points_per_cell);

} // namespace bdsg
