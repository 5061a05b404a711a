#pragma once

#include "specfact/grid.hpp"

namespace specfact {

struct FactorizationOptions {
  std::size_t truncation_degree = 0;  // 0 -> grid N / 4
  int max_iterations = 200;
  double coeff_tolerance = 1e-10;  // absolute, on the normalized density
};

// A factorization result F = F+ (F+)*. `at_zero` is Hermitian positive
// definite (canonical normalization); `residual` is ||F - F+ (F+)*||_L1.
struct SpectralFactor {
  SampledMatrixFunction plus;
  Eigen::MatrixXcd at_zero;
  double residual = 0.0;
  int iterations = 0;
  bool converged = true;
  std::string algorithm;
  std::size_t truncation_degree = 0;
};

// Boundary values of the outer function h with |h| = absf and
// h(0) = exp(mean log absf) > 0, via h = exp(log absf + i (log absf)~).
SampledScalarFunction scalar_outer_from_modulus(const SampledScalarFunction& absf);

// Scalar factor f+ = outer(sqrt(f)); |f+|^2 = f pointwise and
// f+(0) = exp(mean(log f)/2).
SpectralFactor scalar_spectral_factor(const SampledScalarFunction& f);

// Matrix factor by a Wilson-type Newton iteration on the Fourier
// coefficients of a trigonometric-polynomial truncation of F. Each step
// projects the linearized equation onto the analytic part; a step is accepted
// only if the residual decreases, otherwise it is damped. Non-convergence is
// an explicit result state carrying the last residual.
SpectralFactor matrix_spectral_factor(const SampledMatrixFunction& f,
                                      const FactorizationOptions& options = {});

// Right-multiplies the factor by the unitary from the polar decomposition
// at_zero = P U, making the value at the origin Hermitian positive definite.
// The product F+ (F+)* is unchanged.
SpectralFactor normalize_factor_at_zero(const SampledMatrixFunction& a_plus,
                                        const Eigen::MatrixXcd& at_zero);

// sqrt(mean ||Fp(theta) - Gp(theta)||^2); the square is the left-hand side of
// every bound.
double h2_diff_norm(const SampledMatrixFunction& fp, const SampledMatrixFunction& gp);
double h2_diff_norm(const SampledScalarFunction& fp, const SampledScalarFunction& gp);

}  // namespace specfact
