#pragma once

#include "specfact/grid.hpp"

namespace specfact {

// In-place power-of-two FFT, backed by FFTW. sign = -1: sum_j a_j e^{-2pi i jk/N}
// (unnormalized forward), sign = +1: unnormalized inverse.
void fft_inplace(std::vector<cd>& a, int sign);

// Fourier coefficients c_k, k = -N/2 .. N/2-1, stored at index k + N/2, such
// that f(theta_j) = sum_k c_k e^{i k theta_j} on the midpoint grid.
// c_k approximates (1/2pi) integral of f(e^{i theta}) e^{-ik theta}.
std::vector<cd> spectral_coefficients(const SampledScalarFunction& f);

SampledScalarFunction from_coefficients(CircleGrid grid, const std::vector<cd>& coeffs);

// Harmonic conjugate of a real-valued function: Fourier multiplier -i sign(k),
// zero at k = 0. The Nyquist bin k = -N/2 has no conjugate partner on the
// discrete grid and is dropped, which keeps the output exactly real.
SampledScalarFunction conjugate_function(const SampledScalarFunction& u);

}  // namespace specfact
