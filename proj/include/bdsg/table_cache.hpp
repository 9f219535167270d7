#pragma once

#include "bdsg/bloch.hpp"

#include <filesystem>

namespace bdsg {

/// Cache filename for a band table, keyed by potential id and dimensions.
std::filesystem::path lattice_table_cache_name(std::string_view potential_name, int cells,
                                               int points_per_cell, int bands);

/// Persists energies and Bloch coefficients (JSON header + raw arrays).
void save_lattice_table(const LatticeTable& table, const std::filesystem::path& path);

/// Rebuilds a table from a cache file; eigenfunction values are
/// reconstructed, not stored.
LatticeTable load_lattice_table(const std::filesystem::path& path);

/// Loads the cached table when a matching file exists in cache_dir,
/// otherwise computes and stores it.
LatticeTable load_or_compute_lattice_table(const PeriodicPotential& V, const GridPtr& grid,
                                           int bands, const std::filesystem::path& cache_dir);

} // namespace bdsg
