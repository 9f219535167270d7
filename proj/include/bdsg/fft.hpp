#pragma once

#include <complex>
#include <span>

namespace bdsg::fft {

// In-place 1-D complex DFTs with the FFTW sign convention:
//   forward  multiplies by e^{-2*pi*i*j*k/n},
//   backward multiplies by e^{+2*pi*i*j*k/n};
// neither applies a 1/n factor. Plans are cached per length and safe to
// execute concurrently on distinct buffers.

void forward(std::span<std::complex<double>> data);
void backward(std::span<std::complex<double>> data);

} // namespace bdsg::fft
