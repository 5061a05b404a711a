#pragma once

#include <functional>

#include "specfact/grid.hpp"

namespace specfact {

// Spectral decomposition A = U diag(eigenvalues) U* of a Hermitian matrix,
// eigenvalues ascending.
struct HermitianSpectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;

  Eigen::MatrixXcd apply(const std::function<double(double)>& f) const;
};

// Inputs within `tol` of Hermitian are symmetrized as (A + A*)/2 before the
// eigendecomposition; anything further off is rejected.
HermitianSpectrum hermitian_spectrum(const Eigen::MatrixXcd& a, double tol = 1e-10);

// A v eta = U diag(max(lambda_i, eta)) U*, the minimal Hermitian upper bound
// of A and eta I.
Eigen::MatrixXcd matrix_vee(const Eigen::MatrixXcd& a, double eta);

// Functional-calculus logarithm of a positive definite Hermitian matrix.
// Eigenvalues below 1e-14 * ||A|| are an error, not clamped.
Eigen::MatrixXcd spd_log(const Eigen::MatrixXcd& a);
Eigen::MatrixXcd spd_sqrt(const Eigen::MatrixXcd& a);

// Sum of log eigenvalues; throws on a non-positive spectrum.
double log_det_hermitian_pd(const Eigen::MatrixXcd& a);

// A = P U with P Hermitian positive definite and U unitary; requires A
// invertible.
struct PolarDecomposition {
  Eigen::MatrixXcd hermitian;
  Eigen::MatrixXcd unitary;
};
PolarDecomposition polar_decompose(const Eigen::MatrixXcd& a);

// The conditioning fields ell_F(t) = log det F(t) - n log_+ ||F(t)|| <= 0 and
// Q_F(t) = e^{|ell_F(t)|}. A singular or non-PD node is reported by index.
struct EllAndQ {
  SampledScalarFunction ell;
  SampledScalarFunction q;
};
EllAndQ ell_and_q(const SampledMatrixFunction& f);

// M_F(t) = max(1, ||F(t)||) and F1 = F / M_F, so that 0 <= F1 <= I.
struct UnitBallNormalization {
  SampledScalarFunction m;
  SampledMatrixFunction f1;
};
UnitBallNormalization normalize_unit_ball(const SampledMatrixFunction& f);

}  // namespace specfact
