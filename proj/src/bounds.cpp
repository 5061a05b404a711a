#include "specfact/bounds.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>

#include "specfact/matcalc.hpp"
#include "specfact/norms.hpp"
#include "specfact/quadrature.hpp"

namespace specfact {

namespace {

// Sum of (2j+1)^{-2} over j >= 0 and its alternating counterpart, explicit
// partial sums plus Euler-Maclaurin tails (relative tail error << 1e-12).
double odd_inverse_square_sum() {
  const long m = 200000;
  KahanSum acc;
  for (long j = m - 1; j >= 0; --j) acc.add(1.0 / std::pow(2.0 * j + 1.0, 2));
  const double x = 2.0 * m + 1.0;
  acc.add(1.0 / (2.0 * x) + 1.0 / (2.0 * x * x) + 1.0 / (3.0 * x * x * x));
  return acc.value();
}

double odd_inverse_square_alternating() {
  // Pair consecutive terms: g(i) = (4i+1)^{-2} - (4i+3)^{-2} > 0.
  const long m = 200000;
  const auto g = [](double i) {
    return 1.0 / std::pow(4.0 * i + 1.0, 2) - 1.0 / std::pow(4.0 * i + 3.0, 2);
  };
  KahanSum acc;
  for (long i = m - 1; i >= 0; --i) acc.add(g(static_cast<double>(i)));
  // Euler-Maclaurin: integral + g(m)/2 - g'(m)/12.
  const double im = 0.25 * (1.0 / (4.0 * m + 1.0) - 1.0 / (4.0 * m + 3.0));
  const double gp = -4.0 * (1.0 / std::pow(4.0 * m + 1.0, 3) -
                            1.0 / std::pow(4.0 * m + 3.0, 3));
  acc.add(im + 0.5 * g(static_cast<double>(m)) - gp / 12.0);
  return acc.value();
}

double q_of(double p) { return p / (p - 1.0); }

void check_exponent(double p, const char* what) {
  if (!(p > 1.0) || std::isinf(p))
    throw precondition_error(std::string(what) + " must lie in (1, infinity)");
}

// |log d1|^{1 - p1} with the continuous extensions: 0 at d1 = 0, +inf at
// d1 = 1 (unless the accompanying coefficient vanishes).
double log_power_term(double d1, double coeff, double exponent) {
  if (coeff == 0.0) return 0.0;
  if (d1 <= 0.0) return 0.0;
  const double l = std::abs(std::log(d1));
  if (l == 0.0) return kInf;
  return coeff * std::pow(l, exponent);
}

double pow_or_zero(double base, double e) { return base <= 0.0 ? 0.0 : std::pow(base, e); }

KolmogorovConstants compute_kolmogorov() {
  const double k = odd_inverse_square_sum() / odd_inverse_square_alternating();
  const double si_pi = adaptive_simpson(
      [](double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }, 0.0, kPi, 1e-13);
  return {k, 0.5 * k * si_pi};
}

}  // namespace

KolmogorovConstants kolmogorov_constants() {
  static const KolmogorovConstants c = compute_kolmogorov();
  return c;
}

double c_constant(double p0) {
  check_exponent(p0, "c_constant: p0");
  const double q0 = q_of(p0);
  return std::pow(2.0, (p0 + 1.0) / p0) * std::pow(kolmogorov_constants().k0, 1.0 / q0);
}

std::string theorem_name(Theorem t) {
  switch (t) {
    case Theorem::thm12: return "thm1.2";
    case Theorem::thm22: return "thm2.2";
    case Theorem::thm23: return "thm2.3";
    case Theorem::thm13: return "thm1.3";
    case Theorem::thm13inf: return "thm1.3-inf";
    case Theorem::thm14: return "thm1.4";
    case Theorem::thm14inf: return "thm1.4-inf";
    case Theorem::thm15: return "thm1.5";
    case Theorem::thm31: return "thm3.1";
    case Theorem::thm32: return "thm3.2";
    case Theorem::thm33: return "thm3.3";
  }
  return "?";
}

std::optional<Theorem> theorem_from_name(const std::string& name) {
  static const std::map<std::string, Theorem> table = {
      {"thm1.2", Theorem::thm12},     {"thm2.2", Theorem::thm22},
      {"thm2.3", Theorem::thm23},     {"thm1.3", Theorem::thm13},
      {"thm1.3-inf", Theorem::thm13inf}, {"thm1.4", Theorem::thm14},
      {"thm1.4-inf", Theorem::thm14inf}, {"thm1.5", Theorem::thm15},
      {"thm3.1", Theorem::thm31},     {"thm3.2", Theorem::thm32},
      {"thm3.3", Theorem::thm33}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

RhsValue rhs_scalar(Theorem kind, const PairStatistics& stats, const OrliczPair* pair0) {
  RhsValue out;
  out.additive = 2.0 * stats.d1;
  const double dlog = stats.dlogdet;  // scalar case: ||log f - log g||_L1
  switch (kind) {
    case Theorem::thm12: {
      check_exponent(stats.p0, "rhs_scalar: p");
      const double p = stats.p0;
      const double cp = std::pow(2.0, (p + 1.0) / p) *
                        std::pow(5.0 * p / (4.0 * (p - 1.0)), (p - 1.0) / p);
      out.bracket_term = cp * stats.fp0 * pow_or_zero(dlog, (p - 1.0) / p);
      break;
    }
    case Theorem::thm22: {
      const double s = 0.5 * kolmogorov_constants().k0 * dlog;
      double f_psi, lam;
      if (pair0 == nullptr || pair0->kind == OrliczPair::Kind::power) {
        const double p = pair0 ? pair0->p : stats.p0;
        check_exponent(p, "rhs_scalar: p");
        const double q = q_of(p);
        f_psi = std::pow(q, 1.0 / q) * stats.fp0;
        lam = pow_or_zero(s, 1.0 / q);
      } else {
        if (!stats.f_psi0)
          throw precondition_error("rhs_scalar(thm2.2): ||f||_Psi missing for custom pair");
        f_psi = *stats.f_psi0;
        lam = s > 0.0 ? lambda_phi(pair0->phi, s) : 0.0;
      }
      out.bracket_term = 4.0 * f_psi * lam;
      break;
    }
    case Theorem::thm23:
      out.bracket_term = 2.0 * kolmogorov_constants().k0 * stats.finf * dlog;
      break;
    default:
      throw precondition_error("rhs_scalar: not a scalar theorem kind");
  }
  out.total = out.additive + out.logplus_term + out.bracket_term;
  return out;
}

RhsValue rhs_matrix_power(Theorem kind, const PairStatistics& stats) {
  const double d1 = stats.d1;
  const double n = static_cast<double>(stats.n);
  const double p1 = stats.p1;
  RhsValue out;
  out.additive = 4.0 * d1;

  if (kind == Theorem::thm15) {
    out.additive = 0.0;
    out.bracket_term =
        stats.finf * (n * std::exp(stats.ellinf) * d1 + stats.dlogdet);
    out.total = out.bracket_term;
    return out;
  }

  check_exponent(p1, "rhs_matrix_power: p1");
  double inner = 0.0;
  if (kind == Theorem::thm13 || kind == Theorem::thm13inf) {
    if (d1 > 1.0)
      throw precondition_error("rhs_matrix_power(thm1.3): requires ||G - F||_L1 <= 1");
    if (!(stats.alpha > 0.0 && stats.alpha < 1.0))
      throw precondition_error("rhs_matrix_power(thm1.3): alpha must lie in (0,1)");
    const double coeff = 2.0 * (n + 1.0) * std::pow(stats.alpha, 1.0 - p1) * p1 *
                         std::pow(stats.ellp1, p1);
    inner = 3.0 * n * pow_or_zero(d1, 1.0 - stats.alpha) +
            log_power_term(d1, coeff, 1.0 - p1) + stats.dlogdet;
  } else if (kind == Theorem::thm14 || kind == Theorem::thm14inf) {
    if (d1 > std::exp(-4.0))
      throw precondition_error("rhs_matrix_power(thm1.4): requires ||G - F||_L1 <= e^-4");
    const double a = p1 / (p1 + 1.0);
    const double qterm = 4.0 * (n + 1.0) * std::pow(stats.qfp1, 2.0 * p1) / (p1 + 1.0);
    const double logd1 = d1 > 0.0 ? std::abs(std::log(d1)) : 0.0;
    inner = (3.0 * n + qterm * logd1) * pow_or_zero(d1, a) + stats.dlogdet;
  } else {
    throw precondition_error("rhs_matrix_power: unsupported theorem kind");
  }

  if (kind == Theorem::thm13 || kind == Theorem::thm14) {
    check_exponent(stats.p0, "rhs_matrix_power: p0");
    const double p0 = stats.p0;
    const double q0 = q_of(p0);
    const double pre = 2.0 * std::pow(q0, 1.0 / q0) * (stats.fp0 + 1.0);
    out.logplus_term = pre * c_constant(p0) * pow_or_zero(stats.dlogplus, 1.0 / q0);
    out.bracket_term = pre * 2.0 * std::pow(2.0 * p0, 1.0 / p0) * pow_or_zero(inner, 1.0 / q0);
  } else {
    const double pre = 4.0 * std::max(stats.finf, 1.0);
    out.logplus_term = pre * kolmogorov_constants().k0 * stats.dlogplus;
    out.bracket_term = pre * inner;
  }
  out.total = out.additive + out.logplus_term + out.bracket_term;
  return out;
}

NuFunction NuFunction::power_min(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw precondition_error("NuFunction::power_min: alpha must lie in (0,1)");
  return {"min(tau^" + std::to_string(alpha) + ",1)",
          [alpha](double tau) { return std::min(std::pow(tau, alpha), 1.0); }};
}

NuFunction NuFunction::exp_kind(double p1) {
  check_exponent(p1, "NuFunction::exp_kind: p1");
  const double e = 1.0 / (p1 + 1.0);
  return {"min(1,tau^" + std::to_string(e) + ")",
          [e](double tau) { return std::min(1.0, std::pow(tau, e)); }};
}

NuFunction NuFunction::tabulated(std::vector<std::pair<double, double>> samples) {
  NuFunction nu;
  nu.description = "tabulated";
  nu.f = [samples = std::move(samples)](double tau) {
    if (samples.empty()) return 1.0;
    auto it = std::lower_bound(
        samples.begin(), samples.end(), tau,
        [](const std::pair<double, double>& e, double v) { return e.first < v; });
    if (it == samples.end()) return samples.back().second;
    if (it == samples.begin()) {
      // Power-law continuation below the first sample so nu(tau) -> 0.
      const auto& [t0, v0] = samples[0];
      const auto& [t1, v1] = samples[1 < samples.size() ? 1 : 0];
      if (v0 > 0.0 && v1 > v0 && t1 > t0) {
        const double a = std::log(v1 / v0) / std::log(t1 / t0);
        return v0 * std::pow(tau / t0, std::min(a, 0.999));
      }
      return v0;
    }
    return it->second;
  };
  return nu;
}

void validate_nu(const NuFunction& nu) {
  double prev = -1.0;
  for (int k = -12; k <= 2; ++k) {
    const double tau = std::pow(10.0, k);
    const double v = nu.f(tau);
    if (!(v >= 0.0 && v <= 1.0))
      throw precondition_error("validate_nu: values must lie in [0,1]");
    if (v < prev - 1e-15)
      throw precondition_error("validate_nu: nu must be nondecreasing");
    prev = v;
  }
  if (!(nu.f(1e-12) <= 1e-2))
    throw precondition_error("validate_nu: nu(tau) must tend to 0 as tau -> 0+");
  if (!(1e-12 / nu.f(1e-12) <= 1e-2))
    throw precondition_error("validate_nu: tau/nu(tau) must tend to 0 as tau -> 0+");
}

RhsValue rhs_matrix_orlicz(Theorem kind, const PairStatistics& stats,
                           const OrliczPair& pair0, const OrliczPair* pair1,
                           const NuFunction& nu) {
  validate_nu(nu);
  const double d1 = stats.d1;
  const double n = static_cast<double>(stats.n);
  const double k0 = kolmogorov_constants().k0;

  // Middle term of the R-argument, by kind.
  double middle = 0.0;
  if (kind == Theorem::thm31 || kind == Theorem::thm32) {
    if (pair1 == nullptr)
      throw precondition_error("rhs_matrix_orlicz: pair1 required for thm3.1/thm3.2");
    if (d1 > 0.0) {
      const double nud1 = nu.f(d1);
      if (!(nud1 > 0.0))
        throw precondition_error("rhs_matrix_orlicz: nu vanishes at ||G - F||_L1");
      const double lognu = std::abs(std::log(nud1));
      if (lognu > 0.0) {
        if (kind == Theorem::thm31) {
          double ell_psi1;
          if (pair1->kind == OrliczPair::Kind::power)
            ell_psi1 = stats.ell_psi1.value_or(stats.ellp1);
          else if (stats.ell_psi1)
            ell_psi1 = *stats.ell_psi1;
          else
            throw precondition_error(
                "rhs_matrix_orlicz(thm3.1): ||ell_F||_(Psi1) missing");
          if (ell_psi1 > 0.0) {
            double psi_val;
            if (pair1->kind == OrliczPair::Kind::power)
              psi_val = std::pow(lognu / ell_psi1, pair1->p) / pair1->p;
            else
              psi_val = pair1->psi(lognu / ell_psi1);
            middle = std::isinf(psi_val) ? 0.0 : 4.0 * (n + 1.0) * lognu / psi_val;
          }
        } else {
          if (!stats.pi_psi1)
            throw precondition_error("rhs_matrix_orlicz(thm3.2): Pi_{Psi1} missing");
          const double psi_val = pair1->psi(lognu);
          middle = std::isinf(psi_val)
                       ? 0.0
                       : 4.0 * (n + 1.0) * (*stats.pi_psi1) * lognu / psi_val;
        }
      }
    }
  } else if (kind != Theorem::thm33) {
    throw precondition_error("rhs_matrix_orlicz: unsupported theorem kind");
  }

  double r_arg;
  if (kind == Theorem::thm33) {
    r_arg = (2.0 * std::exp(stats.ellinf) + 1.0) * n * d1 + stats.dlogdet;
  } else {
    const double ratio = d1 > 0.0 ? d1 / nu.f(d1) : 0.0;
    r_arg = 6.0 * n * ratio + middle + 2.0 * stats.dlogdet;
  }

  double f_psi0, phi0_inv1, lam, rval;
  const double s = 0.5 * k0 * stats.dlogplus;
  if (pair0.kind == OrliczPair::Kind::power) {
    const double p0 = pair0.p;
    const double q0 = q_of(p0);
    f_psi0 = stats.f_psi0.value_or(std::pow(q0, 1.0 / q0) * stats.fp0);
    phi0_inv1 = std::pow(q0, 1.0 / q0);
    lam = pow_or_zero(s, 1.0 / q0);
    rval = std::pow(4.0 * p0, 1.0 / p0) * pow_or_zero(r_arg, 1.0 / q0);
  } else {
    if (!stats.f_psi0)
      throw precondition_error("rhs_matrix_orlicz: ||F||_{Psi0} missing for custom pair");
    f_psi0 = *stats.f_psi0;
    phi0_inv1 = pair0.phi.inverse(1.0);
    lam = s > 0.0 ? lambda_phi(pair0.phi, s) : 0.0;
    rval = r_arg > 0.0 ? r_psi(pair0.psi, r_arg) : 0.0;
  }

  RhsValue out;
  out.additive = 4.0 * d1;
  const double pre = 2.0 * (f_psi0 + phi0_inv1);
  out.logplus_term = pre * 4.0 * lam;
  out.bracket_term = pre * rval;
  out.total = out.additive + out.logplus_term + out.bracket_term;
  return out;
}

PairStatistics pair_statistics(const SampledMatrixFunction& f,
                               const SampledMatrixFunction& g, double p0, double p1,
                               double alpha) {
  require_compatible(f, g);
  check_exponent(p0, "pair_statistics: p0");
  check_exponent(p1, "pair_statistics: p1");
  PairStatistics st;
  st.n = f.dim;
  st.p0 = p0;
  st.p1 = p1;
  st.alpha = alpha;

  KahanSum d1, dlogdet, dlogplus, fp0, ellp1, qfp1;
  double finf = 0.0, ellinf = 0.0;
  bool q_overflow = false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
  const double n = static_cast<double>(f.dim);
  for (std::size_t j = 0; j < f.values.size(); ++j) {
    es.compute(f.values[j], Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& lf = es.eigenvalues();
    if (lf(0) <= 0.0)
      throw precondition_error("pair_statistics: F not positive definite at node " +
                               std::to_string(j));
    double logdet_f = 0.0;
    for (Eigen::Index i = 0; i < lf.size(); ++i) logdet_f += std::log(lf(i));
    const double norm_f = lf(lf.size() - 1);

    es.compute(g.values[j], Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& lg = es.eigenvalues();
    if (lg(0) <= 0.0)
      throw precondition_error("pair_statistics: G not positive definite at node " +
                               std::to_string(j));
    double logdet_g = 0.0;
    for (Eigen::Index i = 0; i < lg.size(); ++i) logdet_g += std::log(lg(i));
    const double norm_g = lg(lg.size() - 1);

    const double ell = logdet_f - n * log_plus(norm_f);
    d1.add(operator_norm(f.values[j] - g.values[j]));
    dlogdet.add(std::abs(logdet_g - logdet_f));
    dlogplus.add(std::abs(log_plus(norm_g) - log_plus(norm_f)));
    fp0.add(std::pow(norm_f, p0));
    ellp1.add(std::pow(std::abs(ell), p1));
    const double qexp = -ell * p1;
    if (qexp > 690.0)
      q_overflow = true;
    else
      qfp1.add(std::exp(qexp));
    finf = std::max(finf, norm_f);
    ellinf = std::max(ellinf, std::abs(ell));
  }
  const double count = static_cast<double>(f.values.size());
  st.d1 = d1.value() / count;
  st.dlogdet = dlogdet.value() / count;
  st.dlogplus = dlogplus.value() / count;
  st.fp0 = std::pow(fp0.value() / count, 1.0 / p0);
  st.ellp1 = std::pow(ellp1.value() / count, 1.0 / p1);
  st.qfp1 = q_overflow ? kInf : std::pow(qfp1.value() / count, 1.0 / p1);
  st.finf = finf;
  st.ellinf = ellinf;
  return st;
}

namespace {

double min_eigenvalue(const SampledMatrixFunction& f) {
  double m = kInf;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
  for (const auto& v : f.values) {
    es.compute(v, Eigen::EigenvaluesOnly);
    m = std::min(m, es.eigenvalues()(0));
  }
  return m;
}

}  // namespace

BoundReport verify_pair(const SampledMatrixFunction& f, const SampledMatrixFunction& g,
                        Theorem kind, const VerifyOptions& options) {
  BoundReport report;
  report.theorem = theorem_name(kind);
  report.grid_n = f.grid.size();
  report.stats = pair_statistics(f, g, options.p0, options.p1, options.alpha);
  report.min_eig_f = min_eigenvalue(f);
  report.min_eig_g = min_eigenvalue(g);

  const auto evaluate = [&](const SampledMatrixFunction& ff,
                            const SampledMatrixFunction& gg,
                            const PairStatistics& st) -> std::pair<double, double> {
    SpectralFactor sf = matrix_spectral_factor(ff, options.factorization);
    SpectralFactor sg = matrix_spectral_factor(gg, options.factorization);
    if (!sf.converged || !sg.converged)
      throw std::runtime_error(
          "verify_pair: factorization did not converge (residuals " +
          std::to_string(sf.residual) + ", " + std::to_string(sg.residual) + ")");
    report.residual_f = sf.residual;
    report.residual_g = sg.residual;
    report.iterations_f = sf.iterations;
    report.iterations_g = sg.iterations;
    const double lhs = std::pow(h2_diff_norm(sf.plus, sg.plus), 2);

    double rhs;
    switch (kind) {
      case Theorem::thm12:
      case Theorem::thm22:
      case Theorem::thm23:
        if (ff.dim != 1)
          throw precondition_error("verify_pair: scalar theorem on a matrix pair");
        rhs = rhs_scalar(kind, st).total;
        break;
      case Theorem::thm31: {
        OrliczPair p0 = OrliczPair::power_pair(options.p0);
        OrliczPair p1 = OrliczPair::power_pair(options.p1);
        rhs = rhs_matrix_orlicz(kind, st, p0, &p1, NuFunction::power_min(options.alpha))
                  .total;
        break;
      }
      case Theorem::thm32: {
        OrliczPair p0 = OrliczPair::power_pair(options.p0);
        OrliczPair p1 = OrliczPair::exponential_pair(options.p1);
        PairStatistics st2 = st;
        if (!st2.pi_psi1) {
          const EllAndQ eq = ell_and_q(ff);
          st2.pi_psi1 = rho_and_pi(eq.ell, p1.psi).pi;
        }
        rhs = rhs_matrix_orlicz(kind, st2, p0, &p1, NuFunction::exp_kind(options.p1))
                  .total;
        break;
      }
      case Theorem::thm33: {
        OrliczPair p0 = OrliczPair::power_pair(options.p0);
        rhs = rhs_matrix_orlicz(kind, st, p0, nullptr,
                                NuFunction::power_min(options.alpha))
                  .total;
        break;
      }
      default:
        rhs = rhs_matrix_power(kind, st).total;
        break;
    }
    return {lhs, rhs};
  };

  auto [lhs, rhs] = evaluate(f, g, report.stats);
  report.lhs = lhs;
  report.rhs = rhs;
  report.ratio = rhs > 0.0 ? lhs / rhs : (lhs == 0.0 ? 0.0 : kInf);
  report.violation = lhs > rhs * (1.0 + options.violation_tol) + 1e-12;

  if (report.violation && options.regenerate) {
    auto [f2, g2] = options.regenerate(2 * f.grid.size());
    PairStatistics st2 =
        pair_statistics(f2, g2, options.p0, options.p1, options.alpha);
    auto [lhs2, rhs2] = evaluate(f2, g2, st2);
    report.doubling_checked = true;
    report.lhs_doubled = lhs2;
    report.rhs_doubled = rhs2;
    report.violation = lhs2 > rhs2 * (1.0 + options.violation_tol) + 1e-12;
  }
  return report;
}

}  // namespace specfact
