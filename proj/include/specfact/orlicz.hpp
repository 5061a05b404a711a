#pragma once

#include <functional>
#include <optional>
#include <string>

#include "specfact/grid.hpp"

namespace specfact {

// An N-function Phi(x) = integral_0^|x| u with u nondecreasing,
// right-continuous, u(0) = 0, u(inf) = inf. Values past ~1e300 saturate to
// +inf instead of overflowing; rho genuinely diverges for exponential-type
// functions when the Delta_2 condition fails.
struct NFunction {
  std::string name;
  std::function<double(double)> value_fn;
  std::function<double(double)> inverse_fn;     // optional closed form
  std::function<double(double)> derivative_fn;  // optional closed form

  double operator()(double x) const { return value_fn(std::abs(x)); }
  // Closed form when available, otherwise bisection on the stored Phi.
  double inverse(double y) const;
  // Closed form when available, otherwise the right-sided forward difference
  // with step 1e-7 * max(1, x).
  double derivative(double x) const;

  static NFunction power(double a);   // t^a / a, a > 1
  static NFunction exp_a(double p1);  // A(p1 t), A(t) = e^t - t - 1
  static NFunction exp_a_conjugate(double p1);
  // Right-continuous step density u given by samples (t_i, u(t_i)), t_0 = 0.
  static NFunction from_density(std::vector<std::pair<double, double>> samples,
                                std::string name = "custom");
};

// A mutually complementary pair (Phi, Psi). The power kind follows the
// convention Psi(t) = t^p/p, Phi(t) = t^q/q with q = p/(p-1); the exponential
// kind has Psi1(t) = A(p1 t).
struct OrliczPair {
  enum class Kind { power, exponential, custom };
  Kind kind;
  double p = 0.0;  // power: exponent of Psi; exponential: p1
  NFunction phi;
  NFunction psi;

  static OrliczPair power_pair(double p);
  static OrliczPair exponential_pair(double p1);
  static OrliczPair custom_pair(std::vector<std::pair<double, double>> density_u);

  double q() const { return p / (p - 1.0); }
};

// Luxemburg norm inf{kappa > 0 : mean Phi(|f|/kappa) <= 1} by bisection over
// kappa in [1e-12, 1e12]; 0 for f == 0, +inf when no kappa <= 1e12 works.
double luxemburg_norm(const SampledScalarFunction& f, const NFunction& phi);

// Orlicz (dual) norm in the power case: q^{1/q} ||f||_{L_p}.
double orlicz_norm_power(const SampledScalarFunction& f, double p);

// Lambda_Phi(s) = inf{xi > 0 : Phi'(1/xi)/xi <= 1/s}.
double lambda_phi(const NFunction& phi, double s);

// R_Psi(tau) = tau Psi^{-1}(4/tau).
double r_psi(const NFunction& psi, double tau);

// Lemma-type interpolation bound ||u||_L1 Psi^{-1}(||u||_Linf / ||u||_L1),
// an upper bound for the Luxemburg norm of a bounded u; 0 for u == 0.
double interp_bound(const SampledScalarFunction& u, const OrliczPair& pair);

// rho = mean Psi1(|ell|) and Pi = ||ell||_(Psi1) * max(1, rho), for ell <= 0.
struct RhoPi {
  double rho;
  double pi;
};
RhoPi rho_and_pi(const SampledScalarFunction& ell, const NFunction& psi1);

}  // namespace specfact
