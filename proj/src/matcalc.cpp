#include "specfact/matcalc.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

#include "specfact/norms.hpp"

namespace specfact {

Eigen::MatrixXcd HermitianSpectrum::apply(const std::function<double(double)>& f) const {
  Eigen::VectorXd d(eigenvalues.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = f(eigenvalues(i));
  return eigenvectors * d.asDiagonal() * eigenvectors.adjoint();
}

HermitianSpectrum hermitian_spectrum(const Eigen::MatrixXcd& a, double tol) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
    throw precondition_error("hermitian_spectrum: input is not Hermitian");
  const Eigen::MatrixXcd sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_spectrum: eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::MatrixXcd matrix_vee(const Eigen::MatrixXcd& a, double eta) {
  return hermitian_spectrum(a).apply([eta](double x) { return std::max(x, eta); });
}

Eigen::MatrixXcd spd_log(const Eigen::MatrixXcd& a) {
  const HermitianSpectrum s = hermitian_spectrum(a);
  const double top = s.eigenvalues(s.eigenvalues.size() - 1);
  if (s.eigenvalues(0) <= 1e-14 * std::max(top, 0.0))
    throw precondition_error("spd_log: matrix is not (numerically) positive definite");
  return s.apply([](double x) { return std::log(x); });
}

Eigen::MatrixXcd spd_sqrt(const Eigen::MatrixXcd& a) {
  const HermitianSpectrum s = hermitian_spectrum(a);
  if (s.eigenvalues(0) < 0.0 &&
      s.eigenvalues(0) < -1e-12 * std::max(1.0, s.eigenvalues(s.eigenvalues.size() - 1)))
    throw precondition_error("spd_sqrt: matrix is not positive semidefinite");
  return s.apply([](double x) { return std::sqrt(std::max(x, 0.0)); });
}

double log_det_hermitian_pd(const Eigen::MatrixXcd& a) {
  const HermitianSpectrum s = hermitian_spectrum(a);
  const double top = s.eigenvalues(s.eigenvalues.size() - 1);
  if (s.eigenvalues(0) <= 1e-14 * std::max(top, 0.0))
    throw precondition_error("log_det_hermitian_pd: matrix is not positive definite");
  KahanSum acc;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    acc.add(std::log(s.eigenvalues(i)));
  return acc.value();
}

PolarDecomposition polar_decompose(const Eigen::MatrixXcd& a) {
  if (std::abs(a.determinant()) <= 0.0)
    throw precondition_error("polar_decompose: singular matrix");
  const Eigen::MatrixXcd p = spd_sqrt(a * a.adjoint());
  const Eigen::MatrixXcd u = p.partialPivLu().solve(a);
  return {p, u};
}

EllAndQ ell_and_q(const SampledMatrixFunction& f) {
  const double n = static_cast<double>(f.dim);
  std::vector<cd> ell(f.grid.size()), q(f.grid.size());
  for (std::size_t j = 0; j < f.grid.size(); ++j) {
    const HermitianSpectrum s = hermitian_spectrum(f.values[j]);
    const double top = s.eigenvalues(s.eigenvalues.size() - 1);
    if (s.eigenvalues(0) <= 1e-14 * std::max(top, 0.0))
      throw precondition_error("ell_and_q: non positive definite node at index " +
                               std::to_string(j));
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
      logdet += std::log(s.eigenvalues(i));
    const double e = logdet - n * log_plus(top);
    ell[j] = e;
    q[j] = std::exp(-e);
  }
  return {{f.grid, std::move(ell)}, {f.grid, std::move(q)}};
}

UnitBallNormalization normalize_unit_ball(const SampledMatrixFunction& f) {
  if (!f.is_hermitian())
    throw precondition_error("normalize_unit_ball: non-Hermitian node");
  std::vector<cd> m(f.grid.size());
  std::vector<Eigen::MatrixXcd> f1(f.grid.size());
  for (std::size_t j = 0; j < f.grid.size(); ++j) {
    const double mf = std::max(1.0, operator_norm(f.values[j]));
    m[j] = mf;
    f1[j] = f.values[j] / mf;
  }
  return {{f.grid, std::move(m)}, {f.grid, f.dim, std::move(f1)}};
}

}  // namespace specfact
