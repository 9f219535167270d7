#include "bdsg/table_cache.hpp"

#include "bdsg/errors.hpp"
#include "bdsg/io.hpp"

namespace bdsg {

std::filesystem::path lattice_table_cache_name(std::string_view potential_name, int cells,
                                               int points_per_cell, int bands) {
    return "bands_" + std::string(potential_name) + "_L" + std::to_string(cells) + "_R" +
           std::to_string(points_per_cell) + "_M" + std::to_string(bands) + ".v1.bin";
}

void save_lattice_table(const LatticeTable& table, const std::filesystem::path& path) {
    const Grid& grid = table.grid();
    const int L = grid.cells();
    const int R = grid.points_per_cell();
    const int M = table.bands();

    ArrayFile file;
    file.header = {{"format_version", 1},
                   {"kind", "lattice_table"},
                   {"epsilon", grid.epsilon()},
                   {"cells", L},
                   {"points_per_cell", R},
                   {"bands", M},
                   {"potential", table.potential_name()}};

    std::vector<double> energies(static_cast<std::size_t>(M) * L);
    for (int ell = 0; ell < L; ++ell)
        for (int m = 0; m < M; ++m)
            energies[static_cast<std::size_t>(ell) * M + m] = table.energy(m, ell);
    file.add_real("E", std::move(energies));

    std::vector<std::complex<double>> chi(static_cast<std::size_t>(L) * R * M);
    std::size_t pos = 0;
    for (int ell = 0; ell < L; ++ell) {
        const auto& block = table.chi_hat(ell);
        for (int m = 0; m < M; ++m)
            for (int a = 0; a < R; ++a) chi[pos++] = block(a, m);
    }
    file.add_complex("chi_hat", std::move(chi));
    file.save(path);
}

LatticeTable load_lattice_table(const std::filesystem::path& path) {
    const ArrayFile file = ArrayFile::load(path);
    const auto& h = file.header;
    if (h.value("kind", "") != "lattice_table")
        throw IoError(path.string() + " is not a band-table cache");

    const double epsilon = h.at("epsilon");
    const int L = h.at("cells");
    const int R = h.at("points_per_cell");
    const int M = h.at("bands");
    const std::string potential = h.at("potential");

    GridPtr grid = make_grid(epsilon, R);
    if (grid->cells() != L) throw IoError("inconsistent cell count in " + path.string());

    const auto& energies_flat = file.real_arrays.at("E");
    const auto& chi_flat = file.complex_arrays.at("chi_hat");
    if (energies_flat.size() != static_cast<std::size_t>(M) * L ||
        chi_flat.size() != static_cast<std::size_t>(L) * R * M)
        throw IoError("array sizes inconsistent in " + path.string());

    Eigen::MatrixXd energies(M, L);
    for (int ell = 0; ell < L; ++ell)
        for (int m = 0; m < M; ++m)
            energies(m, ell) = energies_flat[static_cast<std::size_t>(ell) * M + m];

    std::vector<Eigen::MatrixXcd> chi(static_cast<std::size_t>(L));
    std::size_t pos = 0;
    for (int ell = 0; ell < L; ++ell) {
        Eigen::MatrixXcd block(R, M);
        for (int m = 0; m < M; ++m)
            for (int a = 0; a < R; ++a) block(a, m) = chi_flat[pos++];
        chi[static_cast<std::size_t>(ell)] = std::move(block);
    }

    LatticeForm id = LatticeForm::Custom;
    try {
        id = lattice_form_from_name(potential);
    } catch (const ScenarioError&) {
        // keep Custom for tables built from user-supplied samplers
    }
    return LatticeTable(std::move(grid), M, id, potential, std::move(energies), std::move(chi));
}

LatticeTable load_or_compute_lattice_table(const PeriodicPotential& V, const GridPtr& grid,
                                           int bands, const std::filesystem::path& cache_dir) {
    std::filesystem::create_directories(cache_dir);
    const auto path = cache_dir / lattice_table_cache_name(V.name(), grid->cells(),
                                                           grid->points_per_cell(), bands);
    if (std::filesystem::exists(path)) {
        LatticeTable table = load_lattice_table(path);
        if (table.grid() == *grid) return table;
    }
    LatticeTable table = compute_lattice_table(V, grid, bands);
    save_lattice_table(table, path);
    return table;
}

} // namespace bdsg
