#pragma once

#include "specfact/grid.hpp"

namespace specfact {

// Integral against the normalized Lebesgue measure: (1/N) sum of values.
cd mean(const SampledScalarFunction& f);
double mean_real(const SampledScalarFunction& f);

// Largest singular value. Fast closed forms for n = 1, 2; SVD otherwise.
double operator_norm(const Eigen::MatrixXcd& m);

// ((1/N) sum_j ||F(theta_j)||^p)^{1/p} with the operator norm pointwise;
// p = infinity gives the max over nodes.
double lp_norm(const SampledMatrixFunction& f, double p);
double lp_norm(const SampledScalarFunction& f, double p);

double l1_distance(const SampledMatrixFunction& f, const SampledMatrixFunction& g);

}  // namespace specfact
