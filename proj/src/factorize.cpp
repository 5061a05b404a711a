#include "specfact/factorize.hpp"

#include <Eigen/LU>

#include <cmath>
#include <string>

#include "specfact/fourier.hpp"
#include "specfact/matcalc.hpp"
#include "specfact/norms.hpp"

namespace specfact {

namespace {

// Analytic matrix polynomial psi of degree d, kept both as coefficients
// (index 0..d) and as values on the grid.
struct AnalyticPoly {
  std::vector<Eigen::MatrixXcd> coeffs;
  std::vector<Eigen::MatrixXcd> values;
};

std::vector<std::vector<cd>> entrywise_coefficients(const SampledMatrixFunction& f) {
  const int n = f.dim;
  std::vector<std::vector<cd>> out(static_cast<std::size_t>(n) * n);
  std::vector<cd> buf(f.grid.size());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      for (std::size_t j = 0; j < f.grid.size(); ++j) buf[j] = f.values[j](r, c);
      out[static_cast<std::size_t>(r) * n + c] =
          spectral_coefficients(SampledScalarFunction{f.grid, buf});
    }
  return out;
}

void refresh_values(AnalyticPoly& psi, const CircleGrid& grid, int n) {
  const std::size_t big = grid.size();
  const long half = static_cast<long>(big) / 2;
  std::vector<cd> coeffs(big, cd(0.0));
  psi.values.assign(big, Eigen::MatrixXcd::Zero(n, n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      std::fill(coeffs.begin(), coeffs.end(), cd(0.0));
      for (std::size_t k = 0; k < psi.coeffs.size(); ++k)
        coeffs[static_cast<std::size_t>(static_cast<long>(k) + half)] = psi.coeffs[k](r, c);
      SampledScalarFunction e = from_coefficients(grid, coeffs);
      for (std::size_t j = 0; j < big; ++j) psi.values[j](r, c) = e.values[j];
    }
}

// Coefficients 0..d of an entrywise sampled matrix function (negative and
// high-order coefficients dropped).
std::vector<Eigen::MatrixXcd> analytic_truncation(const CircleGrid& grid, int n,
                                                  const std::vector<Eigen::MatrixXcd>& values,
                                                  std::size_t degree) {
  const long half = static_cast<long>(grid.size()) / 2;
  std::vector<Eigen::MatrixXcd> out(degree + 1, Eigen::MatrixXcd::Zero(n, n));
  std::vector<cd> buf(grid.size());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      for (std::size_t j = 0; j < grid.size(); ++j) buf[j] = values[j](r, c);
      std::vector<cd> coeffs = spectral_coefficients(SampledScalarFunction{grid, buf});
      for (std::size_t k = 0; k <= degree; ++k)
        out[k](r, c) = coeffs[static_cast<std::size_t>(static_cast<long>(k) + half)];
    }
  return out;
}

double grid_residual_linf(const std::vector<Eigen::MatrixXcd>& f,
                          const std::vector<Eigen::MatrixXcd>& psi) {
  double worst = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const Eigen::MatrixXcd e = f[j] - psi[j] * psi[j].adjoint();
    worst = std::max(worst, e.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

SampledScalarFunction scalar_outer_from_modulus(const SampledScalarFunction& absf) {
  if (!absf.is_real(1e-10))
    throw precondition_error("scalar_outer_from_modulus: modulus must be real");
  std::vector<cd> logs(absf.values.size());
  for (std::size_t j = 0; j < absf.values.size(); ++j) {
    const double v = absf.values[j].real();
    if (!(v > 0.0))
      throw precondition_error("scalar_outer_from_modulus: nonpositive node at index " +
                               std::to_string(j));
    logs[j] = std::log(v);
  }
  SampledScalarFunction u{absf.grid, std::move(logs)};
  SampledScalarFunction conj = conjugate_function(u);
  std::vector<cd> h(u.values.size());
  for (std::size_t j = 0; j < h.size(); ++j)
    h[j] = std::polar(std::exp(u.values[j].real()), conj.values[j].real());
  return {absf.grid, std::move(h)};
}

SpectralFactor scalar_spectral_factor(const SampledScalarFunction& f) {
  if (!f.is_real(1e-10))
    throw precondition_error("scalar_spectral_factor: density must be real");
  std::vector<cd> root(f.values.size());
  for (std::size_t j = 0; j < f.values.size(); ++j) {
    const double v = f.values[j].real();
    if (!(v > 0.0))
      throw precondition_error(
          "scalar_spectral_factor: density must be positive at every node "
          "(Paley-Wiener fails at index " +
          std::to_string(j) + ")");
    root[j] = std::sqrt(v);
  }
  SampledScalarFunction plus =
      scalar_outer_from_modulus(SampledScalarFunction{f.grid, std::move(root)});

  KahanSum res, logmean;
  for (std::size_t j = 0; j < f.values.size(); ++j) {
    res.add(std::abs(f.values[j].real() - std::norm(plus.values[j])));
    logmean.add(std::log(f.values[j].real()));
  }
  const double n = static_cast<double>(f.grid.size());
  Eigen::MatrixXcd at_zero(1, 1);
  at_zero(0, 0) = std::exp(0.5 * logmean.value() / n);

  std::vector<Eigen::MatrixXcd> vals(f.grid.size(), Eigen::MatrixXcd(1, 1));
  for (std::size_t j = 0; j < f.grid.size(); ++j) vals[j](0, 0) = plus.values[j];
  SpectralFactor out{{f.grid, 1, std::move(vals)}, at_zero, res.value() / n,
                     0,       true,                "schwarz"};
  return out;
}

SpectralFactor matrix_spectral_factor(const SampledMatrixFunction& f,
                                      const FactorizationOptions& options) {
  const std::size_t big = f.grid.size();
  const int n = f.dim;
  if (!f.is_hermitian())
    throw precondition_error("matrix_spectral_factor: non-Hermitian node");

  std::size_t degree = options.truncation_degree;
  if (degree == 0) degree = big / 4;
  degree = std::min(degree, big / 2 - 1);

  // Normalize the density so the absolute coefficient tolerance is meaningful
  // across scales.
  Eigen::MatrixXcd c0 = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& m : f.values) c0 += m;
  c0 /= static_cast<double>(big);
  const double scale = std::max(operator_norm(c0), 1e-300);
  std::vector<Eigen::MatrixXcd> fv(big);
  for (std::size_t j = 0; j < big; ++j) fv[j] = f.values[j] / scale;

  AnalyticPoly psi;
  psi.coeffs.assign(degree + 1, Eigen::MatrixXcd::Zero(n, n));
  psi.coeffs[0] = spd_sqrt(c0 / scale);
  refresh_values(psi, f.grid, n);

  const long half = static_cast<long>(big) / 2;
  double residual = grid_residual_linf(fv, psi.values);
  int iter = 0;
  bool converged = residual <= options.coeff_tolerance;

  std::vector<Eigen::MatrixXcd> t_vals(big);
  while (!converged && iter < options.max_iterations) {
    ++iter;
    // T = psi^{-1} F psi^{-*} + I pointwise.
    for (std::size_t j = 0; j < big; ++j) {
      Eigen::PartialPivLU<Eigen::MatrixXcd> lu(psi.values[j]);
      const Eigen::MatrixXcd y = lu.solve(fv[j]);
      t_vals[j] = lu.solve(y.adjoint()).adjoint() + Eigen::MatrixXcd::Identity(n, n);
    }
    // Analytic projection with the zeroth coefficient halved.
    std::vector<Eigen::MatrixXcd> tc(degree + 1, Eigen::MatrixXcd::Zero(n, n));
    {
      std::vector<cd> buf(big);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          for (std::size_t j = 0; j < big; ++j) buf[j] = t_vals[j](r, c);
          std::vector<cd> coeffs =
              spectral_coefficients(SampledScalarFunction{f.grid, buf});
          for (std::size_t k = 0; k <= degree; ++k) {
            cd v = coeffs[static_cast<std::size_t>(static_cast<long>(k) + half)];
            if (k == 0) v *= 0.5;
            tc[k](r, c) = v;
          }
        }
    }
    // Evaluate the projected step on the grid.
    AnalyticPoly step;
    step.coeffs = std::move(tc);
    refresh_values(step, f.grid, n);

    // Damped update psi <- psi ((1 - t) I + t [T]_+), full step first.
    double t = 1.0;
    bool accepted = false;
    AnalyticPoly candidate;
    while (t >= 1.0 / 1024.0) {
      candidate.values.assign(big, Eigen::MatrixXcd::Zero(n, n));
      for (std::size_t j = 0; j < big; ++j)
        candidate.values[j] =
            psi.values[j] * ((1.0 - t) * Eigen::MatrixXcd::Identity(n, n) +
                             t * step.values[j]);
      candidate.coeffs = analytic_truncation(f.grid, n, candidate.values, degree);
      refresh_values(candidate, f.grid, n);
      const double cand_residual = grid_residual_linf(fv, candidate.values);
      if (cand_residual < residual) {
        psi = std::move(candidate);
        residual = cand_residual;
        accepted = true;
        break;
      }
      t /= 2.0;
    }
    if (!accepted) break;  // stalled; report the best residual reached
    converged = residual <= options.coeff_tolerance;
  }

  const double root_scale = std::sqrt(scale);
  std::vector<Eigen::MatrixXcd> plus_vals(big);
  for (std::size_t j = 0; j < big; ++j) plus_vals[j] = psi.values[j] * root_scale;
  SampledMatrixFunction plus{f.grid, n, std::move(plus_vals)};

  SpectralFactor out = normalize_factor_at_zero(plus, psi.coeffs[0] * root_scale);
  {
    KahanSum acc;
    for (std::size_t j = 0; j < big; ++j)
      acc.add(operator_norm(f.values[j] -
                            out.plus.values[j] * out.plus.values[j].adjoint()));
    out.residual = acc.value() / static_cast<double>(big);
  }
  out.iterations = iter;
  out.converged = converged;
  out.algorithm = "wilson";
  out.truncation_degree = degree;
  return out;
}

SpectralFactor normalize_factor_at_zero(const SampledMatrixFunction& a_plus,
                                        const Eigen::MatrixXcd& at_zero) {
  const PolarDecomposition polar = polar_decompose(at_zero);
  const Eigen::MatrixXcd u_adj = polar.unitary.adjoint();
  std::vector<Eigen::MatrixXcd> vals(a_plus.values.size());
  for (std::size_t j = 0; j < vals.size(); ++j) vals[j] = a_plus.values[j] * u_adj;
  SpectralFactor out{{a_plus.grid, a_plus.dim, std::move(vals)},
                     polar.hermitian,
                     std::numeric_limits<double>::quiet_NaN(),
                     0,
                     true,
                     "normalize"};
  return out;
}

double h2_diff_norm(const SampledMatrixFunction& fp, const SampledMatrixFunction& gp) {
  require_compatible(fp, gp);
  KahanSum acc;
  for (std::size_t j = 0; j < fp.values.size(); ++j) {
    const double d = operator_norm(fp.values[j] - gp.values[j]);
    acc.add(d * d);
  }
  return std::sqrt(acc.value() / static_cast<double>(fp.grid.size()));
}

double h2_diff_norm(const SampledScalarFunction& fp, const SampledScalarFunction& gp) {
  if (!(fp.grid == gp.grid)) throw precondition_error("h2_diff_norm: grid mismatch");
  KahanSum acc;
  for (std::size_t j = 0; j < fp.values.size(); ++j)
    acc.add(std::norm(fp.values[j] - gp.values[j]));
  return std::sqrt(acc.value() / static_cast<double>(fp.grid.size()));
}

}  // namespace specfact
