#include "bdsg/baselines.hpp"

#include "bdsg/errors.hpp"
#include "bdsg/fft.hpp"
#include "bdsg/gpc.hpp"
#include "bdsg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <optional>

namespace bdsg {

namespace {
using cplx = std::complex<double>;

std::vector<cplx> kinetic_phase(const Grid& grid, double dt) {
    const int n = grid.total_points();
    std::vector<cplx> phase(static_cast<std::size_t>(n));
    const double eps = grid.epsilon();
    for (int a = 0; a < n; ++a) {
        const int xi = (a <= n / 2 - 1) ? a : a - n;
        phase[static_cast<std::size_t>(a)] =
            std::polar(1.0, -0.5 * eps * static_cast<double>(xi) * static_cast<double>(xi) * dt);
    }
    return phase;
}

std::vector<cplx> potential_phase(std::span<const double> potential, double dt, double eps) {
    std::vector<cplx> phase(potential.size());
    for (std::size_t i = 0; i < potential.size(); ++i)
        phase[i] = std::polar(1.0, -0.5 * dt * potential[i] / eps);
    return phase;
}

void ts_step_inplace(std::vector<cplx>& psi, const std::vector<cplx>& half_pot,
                     const std::vector<cplx>& kin) {
    const double inv_n = 1.0 / static_cast<double>(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= half_pot[i];
    fft::forward(psi);
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= kin[i];
    fft::backward(psi);
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= inv_n * half_pot[i];
}
} // namespace

WaveField ts_step(const WaveField& field, std::span<const double> total_potential, double dt,
                  double epsilon) {
    if (total_potential.size() != static_cast<std::size_t>(field.size()))
        throw GridMismatch("potential sample array does not match grid");
    std::vector<cplx> psi(field.values().begin(), field.values().end());
    ts_step_inplace(psi, potential_phase(total_potential, dt, epsilon),
                    kinetic_phase(field.grid(), dt));
    return WaveField(field.grid_ptr(), std::move(psi));
}

WaveField ts_run(const WaveField& initial, std::span<const double> total_potential, double dt,
                 int steps, double epsilon) {
    if (total_potential.size() != static_cast<std::size_t>(initial.size()))
        throw GridMismatch("potential sample array does not match grid");
    const auto half_pot = potential_phase(total_potential, dt, epsilon);
    const auto kin = kinetic_phase(initial.grid(), dt);
    std::vector<cplx> psi(initial.values().begin(), initial.values().end());
    for (int n = 0; n < steps; ++n) ts_step_inplace(psi, half_pot, kin);
    return WaveField(initial.grid_ptr(), std::move(psi));
}

std::vector<double> total_potential_samples(const Grid& grid, const PeriodicPotential& V,
                                            const RandomPotential& U, double z) {
    std::vector<double> samples(static_cast<std::size_t>(grid.total_points()));
    for (int ell = 0; ell < grid.cells(); ++ell)
        for (int r = 0; r < grid.points_per_cell(); ++r)
            samples[static_cast<std::size_t>(grid.index(ell, r))] =
                V(grid.y(r)) + U(grid.x(ell, r), z);
    return samples;
}

double uniform_draw(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer on a counter; stateless per index
    std::uint64_t s = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    s = (s ^ (s >> 30)) * 0xBF58476D1CE4E5B9ULL;
    s = (s ^ (s >> 27)) * 0x94D049BB133111EBULL;
    s ^= s >> 31;
    const double u = static_cast<double>(s >> 11) * 0x1.0p-53; // [0,1)
    return 2.0 * u - 1.0;
}

namespace {
struct PartialSums {
    std::vector<cplx> mean;
    std::vector<double> density;
};

void merge(PartialSums& into, const PartialSums& from) {
    for (std::size_t i = 0; i < into.mean.size(); ++i) into.mean[i] += from.mean[i];
    for (std::size_t i = 0; i < into.density.size(); ++i) into.density[i] += from.density[i];
}
} // namespace

SolutionStats monte_carlo(const std::function<WaveField(double)>& solve_at, int realizations,
                          std::uint64_t seed) {
    if (realizations < 1) throw std::invalid_argument("need at least one realization");

    // fixed block decomposition (independent of thread count), serial in-block
    // accumulation, then pairwise block merge in index order
    constexpr int kBlock = 32;
    const int n_blocks = (realizations + kBlock - 1) / kBlock;
    std::vector<PartialSums> blocks(static_cast<std::size_t>(n_blocks));
    GridPtr grid;

    std::mutex grid_mu;
    parallel_for(static_cast<std::size_t>(n_blocks), [&](std::size_t b) {
        PartialSums sums;
        const int begin = static_cast<int>(b) * kBlock;
        const int end = std::min(realizations, begin + kBlock);
        for (int k = begin; k < end; ++k) {
            const WaveField psi = solve_at(uniform_draw(seed, static_cast<std::uint64_t>(k)));
            if (sums.mean.empty()) {
                sums.mean.assign(static_cast<std::size_t>(psi.size()), cplx{});
                sums.density.assign(static_cast<std::size_t>(psi.size()), 0.0);
                std::scoped_lock lock(grid_mu);
                if (!grid) grid = psi.grid_ptr();
            }
            auto v = psi.values();
            for (std::size_t i = 0; i < v.size(); ++i) {
                sums.mean[i] += v[i];
                sums.density[i] += std::norm(v[i]);
            }
        }
        blocks[b] = std::move(sums);
    });

    for (std::size_t stride = 1; stride < blocks.size(); stride *= 2)
        for (std::size_t i = 0; i + stride < blocks.size(); i += 2 * stride)
            merge(blocks[i], blocks[i + stride]);

    PartialSums& total = blocks.front();
    const double inv_k = 1.0 / realizations;
    std::vector<cplx> mean(total.mean.size());
    std::vector<double> density(total.density.size());
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] = total.mean[i] * inv_k;
    for (std::size_t i = 0; i < density.size(); ++i) density[i] = total.density[i] * inv_k;
    return SolutionStats{grid, WaveField(grid, std::move(mean)), std::move(density)};
}

SolutionStats CollocationResult::stats() const {
    const GridPtr grid = solutions.front().grid_ptr();
    const std::size_t n = static_cast<std::size_t>(solutions.front().size());
    std::vector<cplx> mean(n, cplx{});
    std::vector<double> density(n, 0.0);
    for (std::size_t j = 0; j < solutions.size(); ++j) {
        const double w = weights[j];
        auto v = solutions[j].values();
        for (std::size_t i = 0; i < n; ++i) {
            mean[i] += w * v[i];
            density[i] += w * std::norm(v[i]);
        }
    }
    return SolutionStats{grid, WaveField(grid, std::move(mean)), std::move(density)};
}

WaveField CollocationResult::interpolate(double z) const {
    const std::size_t m = nodes.size();
    // barycentric weights; m stays small, the direct product is fine
    std::vector<double> bary(m, 1.0);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i)
            if (i != j) bary[j] /= (nodes[j] - nodes[i]);

    for (std::size_t j = 0; j < m; ++j)
        if (z == nodes[j]) return solutions[j];

    double denom = 0.0;
    std::vector<double> coeff(m);
    for (std::size_t j = 0; j < m; ++j) {
        coeff[j] = bary[j] / (z - nodes[j]);
        denom += coeff[j];
    }

    const GridPtr grid = solutions.front().grid_ptr();
    std::vector<cplx> out(static_cast<std::size_t>(solutions.front().size()), cplx{});
    for (std::size_t j = 0; j < m; ++j) {
        const double c = coeff[j] / denom;
        auto v = solutions[j].values();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * v[i];
    }
    return WaveField(grid, std::move(out));
}

CollocationResult stochastic_collocation(const std::function<WaveField(double)>& solve_at,
                                         int n_nodes) {
    if (n_nodes < 1) throw std::invalid_argument("need at least one collocation node");
    auto [nodes, weights] = gauss_legendre_rule(n_nodes);

    std::vector<WaveField> solutions;
    solutions.reserve(nodes.size());
    // slot-per-node so the parallel solves stay deterministic
    std::vector<std::optional<WaveField>> slots(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t j) { slots[j] = solve_at(nodes[j]); });
    for (auto& s : slots) solutions.push_back(std::move(*s));

    return CollocationResult{std::move(nodes), std::move(weights), std::move(solutions)};
}

} // namespace bdsg
