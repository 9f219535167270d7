#pragma once

#include "bdsg/wavefield.hpp"

#include <complex>
#include <random>
#include <vector>

namespace bdsg::testing {

inline WaveField random_field(const GridPtr& grid, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    WaveField field(grid);
    for (auto& v : field.values()) v = {dist(rng), dist(rng)};
    return field;
}

inline double max_abs_diff(std::span<const std::complex<double>> a,
                           std::span<const std::complex<double>> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs_diff(const WaveField& a, const WaveField& b) {
    return max_abs_diff(a.values(), b.values());
}

/// Composite Simpson rule on [lo, hi]; independent integration oracle.
template <class F>
double simpson(F&& f, double lo, double hi, int intervals) {
    const int n = intervals % 2 == 0 ? intervals : intervals + 1;
    const double h = (hi - lo) / n;
    double sum = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) sum += f(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

} // namespace bdsg::testing
