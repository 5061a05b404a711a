#include "specfact/norms.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace specfact {

cd mean(const SampledScalarFunction& f) {
  KahanSum re, im;
  for (const cd& z : f.values) {
    re.add(z.real());
    im.add(z.imag());
  }
  const double n = static_cast<double>(f.grid.size());
  return {re.value() / n, im.value() / n};
}

double mean_real(const SampledScalarFunction& f) { return mean(f).real(); }

double operator_norm(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return std::abs(m(0, 0));
  if (n == 2) {
    // Singular values of a 2x2 from the Frobenius norm and determinant.
    const double t = m.squaredNorm();
    const double d = std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    const double disc = std::max(0.0, t * t - 4.0 * d * d);
    return std::sqrt(0.5 * (t + std::sqrt(disc)));
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

double lp_norm(const SampledMatrixFunction& f, double p) {
  if (!(p >= 1.0))
    throw precondition_error("lp_norm: p must be >= 1 or infinity");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, operator_norm(v));
    return m;
  }
  KahanSum acc;
  for (const auto& v : f.values) acc.add(std::pow(operator_norm(v), p));
  return std::pow(acc.value() / static_cast<double>(f.grid.size()), 1.0 / p);
}

double lp_norm(const SampledScalarFunction& f, double p) {
  if (!(p >= 1.0))
    throw precondition_error("lp_norm: p must be >= 1 or infinity");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const cd& z : f.values) m = std::max(m, std::abs(z));
    return m;
  }
  KahanSum acc;
  for (const cd& z : f.values) acc.add(std::pow(std::abs(z), p));
  return std::pow(acc.value() / static_cast<double>(f.grid.size()), 1.0 / p);
}

double l1_distance(const SampledMatrixFunction& f, const SampledMatrixFunction& g) {
  require_compatible(f, g);
  KahanSum acc;
  for (std::size_t j = 0; j < f.values.size(); ++j)
    acc.add(operator_norm(f.values[j] - g.values[j]));
  return acc.value() / static_cast<double>(f.grid.size());
}

}  // namespace specfact
