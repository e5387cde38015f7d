#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace afc::fft {

// Forward transform: X_k = sum_j x_j exp(-2*pi*i*j*k/n).
// A delay by tau therefore maps to a factor exp(-i*omega*tau) on the spectrum,
// matching the sign convention used throughout the medium response code.
std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& x);

// Inverse transform, includes the 1/n normalisation.
std::vector<std::complex<double>> inverse(const std::vector<std::complex<double>>& x);

std::size_t next_pow2(std::size_t n);

}  // namespace afc::fft
