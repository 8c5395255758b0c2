#pragma once

#include <complex>
#include <span>
#include <vector>

namespace acemd::fft {

/// Full-length complex DFT of a real sequence (no normalization).
std::vector<std::complex<double>> forward(std::span<const double> x);

/// Inverse DFT scaled by 1/n.
std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> spectrum);

}  // namespace acemd::fft
