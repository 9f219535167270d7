#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>

namespace bdsg {

enum class LatticeForm { Mathieu, KronigPenney, WeakMathieu, Custom };
enum class RandomForm { HarmonicNoise, StepDecay, LinearForce, AndersonCosine, Custom };

/// 2*pi-periodic lattice potential V(y). The argument is wrapped into
/// [0, 2*pi) before sampling; discontinuous forms take their left-limit
/// value at jump points.
class PeriodicPotential {
public:
    static PeriodicPotential mathieu();       // cos(y) + 1
    static PeriodicPotential kronig_penney(); // indicator of (pi/2, 3*pi/2]
    static PeriodicPotential weak_mathieu();  // 0.5 + 0.5*cos(y)
    static PeriodicPotential custom(std::function<double(double)> sampler);

    double operator()(double y) const;

    /// True Fourier coefficient (1/2pi) int V e^{-i n y} dy when known in
    /// closed form. Sampled-DFT coefficients alias only at O(1/R) for
    /// discontinuous potentials, which would cap the spatial accuracy of the
    /// band preprocessing at first order; the built-in forms therefore carry
    /// their analytic series.
    bool has_analytic_fourier() const { return static_cast<bool>(fourier_); }
    std::complex<double> fourier_coefficient(int n) const { return fourier_(n); }

    LatticeForm id() const { return id_; }
    std::string_view name() const;

private:
    PeriodicPotential(LatticeForm id, std::function<double(double)> f,
                      std::function<std::complex<double>(int)> fourier = {})
        : id_(id), sampler_(std::move(f)), fourier_(std::move(fourier)) {}

    LatticeForm id_;
    std::function<double(double)> sampler_;
    std::function<std::complex<double>(int)> fourier_;
};

/// Random external potential U(x, z) with z in [-1, 1]. sigma scales the
/// randomness magnitude of the cosine disorder form only.
class RandomPotential {
public:
    static RandomPotential harmonic_noise();  // |x-pi|^2 + 0.5*(z*cos(2x) + 1)
    static RandomPotential step_decay();      // 1_{(pi/2,3pi/2]}(x) + 2(z+1)/(x+1)
    static RandomPotential linear_force();    // (1 + 0.1*z)*x
    static RandomPotential anderson_cosine(double sigma); // sigma*|z|*cos(x)
    static RandomPotential custom(std::function<double(double, double)> evaluator);

    double operator()(double x, double z) const { return evaluator_(x, z); }

    RandomForm id() const { return id_; }
    double sigma() const { return sigma_; }
    std::string_view name() const;

private:
    RandomPotential(RandomForm id, double sigma, std::function<double(double, double)> f)
        : id_(id), sigma_(sigma), evaluator_(std::move(f)) {}

    RandomForm id_;
    double sigma_;
    std::function<double(double, double)> evaluator_;
};

LatticeForm lattice_form_from_name(std::string_view name);
RandomForm random_form_from_name(std::string_view name);
std::string_view to_name(LatticeForm id);
std::string_view to_name(RandomForm id);

PeriodicPotential make_lattice_potential(LatticeForm id);
RandomPotential make_random_potential(RandomForm id, double sigma);

} // namespace bdsg
