#pragma once

#include <optional>
#include <string>

#include "specfact/factorize.hpp"
#include "specfact/orlicz.hpp"

namespace specfact {

// K: best constant in Kolmogorov's weak (1,1) inequality for the conjugation
// operator, K = (sum of odd k^-2) / (alternating sum); K0 = (K/2) Si(pi).
struct KolmogorovConstants {
  double k;
  double k0;
};
KolmogorovConstants kolmogorov_constants();

// c(p0) = 2^{(p0+1)/p0} K0^{1/q0}, q0 = p0/(p0-1).
double c_constant(double p0);

// Everything the right-hand sides consume, measured once per pair.
struct PairStatistics {
  double d1 = 0.0;        // ||G - F||_L1
  double dlogdet = 0.0;   // ||log det G - log det F||_L1
  double dlogplus = 0.0;  // || log+||G|| - log+||F|| ||_L1
  double fp0 = 0.0;       // ||F||_Lp0
  double finf = 0.0;      // ||F||_Linf
  double ellp1 = 0.0;     // ||ell_F||_Lp1
  double ellinf = 0.0;    // ||ell_F||_Linf
  double qfp1 = 0.0;      // ||Q_F||_Lp1
  int n = 1;
  double p0 = 2.0;
  double p1 = 2.0;
  double alpha = 0.5;
  // Orlicz-side statistics for non-power pairs.
  std::optional<double> f_psi0;    // ||F||_{Psi0}
  std::optional<double> ell_psi1;  // ||ell_F||_(Psi1)
  std::optional<double> pi_psi1;   // Pi_{Psi1}(ell_F)
};

enum class Theorem {
  thm12,
  thm22,
  thm23,
  thm13,
  thm13inf,
  thm14,
  thm14inf,
  thm15,
  thm31,
  thm32,
  thm33,
};

std::string theorem_name(Theorem t);
std::optional<Theorem> theorem_from_name(const std::string& name);

// Right-hand side with its additive pieces kept separate: `additive` is the
// plain ||G - F||_L1 term, `logplus_term` the conjugation-constant term, and
// `bracket_term` the projected-factor term (prefactors included in each).
struct RhsValue {
  double total = 0.0;
  double additive = 0.0;
  double logplus_term = 0.0;
  double bracket_term = 0.0;
};

RhsValue rhs_scalar(Theorem kind, const PairStatistics& stats,
                    const OrliczPair* pair0 = nullptr);

RhsValue rhs_matrix_power(Theorem kind, const PairStatistics& stats);

// Admissible weight nu: nondecreasing into [0,1], nu(tau) -> 0 and
// tau/nu(tau) -> 0 as tau -> 0+ (validated numerically on a decade grid).
struct NuFunction {
  std::string description;
  std::function<double(double)> f;

  static NuFunction power_min(double alpha);  // min(tau^alpha, 1)
  static NuFunction exp_kind(double p1);      // min(1, tau^{1/(p1+1)})
  static NuFunction tabulated(std::vector<std::pair<double, double>> samples);
};
void validate_nu(const NuFunction& nu);

RhsValue rhs_matrix_orlicz(Theorem kind, const PairStatistics& stats,
                           const OrliczPair& pair0, const OrliczPair* pair1,
                           const NuFunction& nu);

struct VerifyOptions {
  double p0 = 2.0;
  double p1 = 2.0;
  double alpha = 0.5;
  double violation_tol = 1e-6;
  FactorizationOptions factorization;
  // Regenerates the pair on a doubled grid; violations are only surfaced
  // once confirmed there.
  std::function<std::pair<SampledMatrixFunction, SampledMatrixFunction>(std::size_t)>
      regenerate;
};

struct BoundReport {
  std::string theorem;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs, 0 when both vanish
  PairStatistics stats;
  std::size_t grid_n = 0;
  bool violation = false;
  bool doubling_checked = false;
  double lhs_doubled = 0.0;
  double rhs_doubled = 0.0;
  double residual_f = 0.0;
  double residual_g = 0.0;
  int iterations_f = 0;
  int iterations_g = 0;
  double min_eig_f = 0.0;
  double min_eig_g = 0.0;
};

// Collects PairStatistics from sampled densities (pointwise eigenvalues).
PairStatistics pair_statistics(const SampledMatrixFunction& f,
                               const SampledMatrixFunction& g, double p0, double p1,
                               double alpha);

// Factorizes both densities, evaluates the requested bound and compares.
BoundReport verify_pair(const SampledMatrixFunction& f, const SampledMatrixFunction& g,
                        Theorem kind, const VerifyOptions& options = {});

}  // namespace specfact
