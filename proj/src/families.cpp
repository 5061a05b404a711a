#include "specfact/families.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "specfact/fourier.hpp"
#include "specfact/matcalc.hpp"
#include "specfact/norms.hpp"
#include "specfact/quadrature.hpp"

namespace specfact {

namespace {

// Log-moduli of the four outer functions at an angle. The identities
// |lambda3|^2 + |lambda2|^2 = 1 and |lambda1 lambda2| = |lambda0| hold
// pointwise by construction.
struct LogModuli {
  double l0, l1, l2, l3;
};

LogModuli log_moduli_at(const Example1Params& p, double theta) {
  const double delta = p.resolved_delta();
  const bool arc = theta >= p.eps && theta <= 2.0 * p.eps;
  LogModuli m{};
  const double half_log2 = 0.5 * std::log(2.0);
  if (arc) {
    m.l0 = p.power_moduli ? std::log(theta) / (2.0 * p.p1)
                          : -std::pow(theta, -1.0 / p.p1);
    m.l1 = half_log2 + m.l0;
    m.l2 = -half_log2;
    m.l3 = -half_log2;
  } else {
    const double log_one_minus_d2 = std::log1p(-delta * delta);
    m.l0 = 0.0;
    m.l1 = -0.5 * log_one_minus_d2;
    m.l2 = 0.5 * log_one_minus_d2;
    m.l3 = std::log(delta);
  }
  return m;
}

std::size_t arc_node_count(const CircleGrid& grid, double eps) {
  // Midpoint nodes inside [eps, 2 eps]; the grid is uniform so count directly.
  const double h = grid.step();
  const double lo = (eps + kPi) / h - 0.5;
  const double hi = (2.0 * eps + kPi) / h - 0.5;
  const double count = std::floor(hi) - std::ceil(lo) + 1.0;
  return count > 0.0 ? static_cast<std::size_t>(count) : 0;
}

void require_arc_resolved(const CircleGrid& grid, double eps) {
  if (arc_node_count(grid, eps) < 64)
    throw precondition_error(
        "example pair: grid too coarse, fewer than 64 nodes in [eps, 2 eps]");
}

struct OuterScalar {
  std::vector<cd> boundary;
  double at_zero;  // exp(mean log-modulus) > 0
};

OuterScalar build_outer(const CircleGrid& grid, const std::vector<double>& log_modulus) {
  std::vector<cd> u(log_modulus.begin(), log_modulus.end());
  SampledScalarFunction conj = conjugate_function({grid, std::move(u)});
  OuterScalar out;
  out.boundary.resize(grid.size());
  KahanSum msum;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    msum.add(log_modulus[j]);
    out.boundary[j] = std::polar(std::exp(log_modulus[j]), conj.values[j].real());
  }
  out.at_zero = std::exp(msum.value() / static_cast<double>(grid.size()));
  return out;
}

// The four outer functions of a counterexample pair on a grid.
struct Lambdas {
  std::array<OuterScalar, 4> lam;
  std::vector<double> logs[4];
};

Lambdas build_lambdas(const Example1Params& params, const CircleGrid& grid) {
  require_arc_resolved(grid, params.eps);
  Lambdas out;
  for (int i = 0; i < 4; ++i) out.logs[i].resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const LogModuli m = log_moduli_at(params, grid.theta(j));
    out.logs[0][j] = m.l0;
    out.logs[1][j] = m.l1;
    out.logs[2][j] = m.l2;
    out.logs[3][j] = m.l3;
  }
  for (int i = 0; i < 4; ++i) out.lam[i] = build_outer(grid, out.logs[i]);
  return out;
}

double opnorm_herm2(double a, double c, double b_mod) {
  // Hermitian [[a, b],[conj b, c]]: eigenvalues ((a+c) +- sqrt((a-c)^2+4|b|^2))/2.
  const double s = std::sqrt((a - c) * (a - c) + 4.0 * b_mod * b_mod);
  return std::max(std::abs(0.5 * ((a + c) + s)), std::abs(0.5 * ((a + c) - s)));
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double d = n * sxx - sx * sx;
  return d == 0.0 ? 0.0 : (n * sxy - sx * sy) / d;
}

}  // namespace

double Example1Params::resolved_delta() const {
  if (delta) return *delta;
  if (power_moduli) return std::pow(eps, (2.0 * p1 + 1.0) / (2.0 * p1));
  return eps / (4.0 * kPi) * std::exp(-std::pow(2.0, -1.0 / p1) * std::pow(eps, -1.0 / p1));
}

std::size_t example1_auto_grid(double eps) {
  const double target = 256.0 * kPi / eps;
  std::size_t n = 1 << 14;
  while (static_cast<double>(n) < target) n <<= 1;
  return n;
}

namespace {

Example1Pair materialize_pair(const Example1Params& params, CircleGrid grid) {
  const Lambdas l = build_lambdas(params, grid);
  std::vector<Eigen::MatrixXcd> f(grid.size()), g(grid.size()), fp(grid.size()),
      gp(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    Eigen::Matrix2cd fpj = Eigen::Matrix2cd::Zero();
    fpj(0, 0) = l.lam[0].boundary[j];
    fpj(1, 1) = 1.0;
    Eigen::Matrix2cd gpj = Eigen::Matrix2cd::Zero();
    gpj(0, 0) = l.lam[1].boundary[j];
    gpj(1, 0) = l.lam[3].boundary[j];
    gpj(1, 1) = l.lam[2].boundary[j];
    fp[j] = fpj;
    gp[j] = gpj;
    f[j] = fpj * fpj.adjoint();
    g[j] = gpj * gpj.adjoint();
  }
  return {{grid, 2, std::move(f)},
          {grid, 2, std::move(g)},
          {grid, 2, std::move(fp)},
          {grid, 2, std::move(gp)}};
}

}  // namespace

Example1Pair example1_pair(const Example1Params& params, CircleGrid grid) {
  Example1Params p = params;
  p.power_moduli = false;
  return materialize_pair(p, grid);
}

Example1Pair example2_pair(const Example1Params& params, CircleGrid grid) {
  Example1Params p = params;
  p.power_moduli = true;
  return materialize_pair(p, grid);
}

FamilyEvaluation example1_evaluate(const Example1Params& params, std::size_t grid_n,
                                   double p0, double alpha) {
  const CircleGrid grid(grid_n == 0 ? example1_auto_grid(params.eps) : grid_n);
  const Lambdas l = build_lambdas(params, grid);
  const double p1 = params.p1;

  // Canonical normalization: F+(0) is already positive diagonal, G+(0) is
  // lower triangular with positive diagonal; rotate G+ by the adjoint of the
  // unitary polar part of G+(0).
  Eigen::Matrix2cd gp0 = Eigen::Matrix2cd::Zero();
  gp0(0, 0) = l.lam[1].at_zero;
  gp0(1, 0) = l.lam[3].at_zero;
  gp0(1, 1) = l.lam[2].at_zero;
  const Eigen::Matrix2cd u_adj = polar_decompose(gp0).unitary.adjoint();

  KahanSum d1, dlogdet, dlogplus, fp0_acc, ellp1, qfp1, lhs_paper, lhs_canon, lam3;
  double finf = 0.0, ellinf = 0.0;
  bool q_overflow = false;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double l0 = l.logs[0][j], l1v = l.logs[1][j], l2v = l.logs[2][j],
                 l3v = l.logs[3][j];
    const double m0sq = std::exp(2.0 * l0);
    const double g11 = std::exp(2.0 * l1v);
    const double g22 = std::exp(2.0 * l3v) + std::exp(2.0 * l2v);
    const double g12 = std::exp(l1v + l3v);

    const double norm_f = std::max(m0sq, 1.0);
    const double logdet_f = 2.0 * l0;
    const double logdet_g = 2.0 * (l1v + l2v);
    const double ell = logdet_f - 2.0 * log_plus(norm_f);

    const double tr = g11 + g22;
    const double det_g = std::exp(2.0 * (l1v + l2v));
    const double disc = std::max(0.0, tr * tr - 4.0 * det_g);
    const double norm_g = 0.5 * (tr + std::sqrt(disc));

    d1.add(opnorm_herm2(g11 - m0sq, g22 - 1.0, g12));
    dlogdet.add(std::abs(logdet_g - logdet_f));
    dlogplus.add(std::abs(log_plus(norm_g) - log_plus(norm_f)));
    fp0_acc.add(std::pow(norm_f, p0));
    ellp1.add(std::pow(std::abs(ell), p1));
    const double qexp = -ell * p1;
    if (qexp > 690.0)
      q_overflow = true;
    else
      qfp1.add(std::exp(qexp));
    finf = std::max(finf, norm_f);
    ellinf = std::max(ellinf, std::abs(ell));
    lam3.add(std::exp(2.0 * l3v));

    Eigen::Matrix2cd fpj = Eigen::Matrix2cd::Zero();
    fpj(0, 0) = l.lam[0].boundary[j];
    fpj(1, 1) = 1.0;
    Eigen::Matrix2cd gpj = Eigen::Matrix2cd::Zero();
    gpj(0, 0) = l.lam[1].boundary[j];
    gpj(1, 0) = l.lam[3].boundary[j];
    gpj(1, 1) = l.lam[2].boundary[j];

    double d = operator_norm(gpj - fpj);
    lhs_paper.add(d * d);
    d = operator_norm(gpj * u_adj - fpj);
    lhs_canon.add(d * d);
  }

  const double count = static_cast<double>(grid.size());
  FamilyEvaluation out;
  out.grid_n = grid.size();
  out.stats.n = 2;
  out.stats.p0 = p0;
  out.stats.p1 = p1;
  out.stats.alpha = alpha;
  out.stats.d1 = d1.value() / count;
  out.stats.dlogdet = dlogdet.value() / count;
  out.stats.dlogplus = dlogplus.value() / count;
  out.stats.fp0 = std::pow(fp0_acc.value() / count, 1.0 / p0);
  out.stats.finf = finf;
  out.stats.ellp1 = std::pow(ellp1.value() / count, 1.0 / p1);
  out.stats.ellinf = ellinf;
  out.stats.qfp1 = q_overflow ? kInf : std::pow(qfp1.value() / count, 1.0 / p1);
  out.lhs_paper = lhs_paper.value() / count;
  out.lhs_canonical = lhs_canon.value() / count;
  out.lambda3_h2_sq = lam3.value() / count;
  return out;
}

LowerBoundReport example1_lower_bound_check(const Example1Params& params,
                                            std::size_t grid_n) {
  Example1Params p = params;
  p.power_moduli = false;
  LowerBoundReport r;
  r.eval = example1_evaluate(p, grid_n, 2.0, 0.5);
  const double d1 = r.eval.stats.d1;
  const double logd1 = std::abs(std::log(d1));
  r.log_bound = std::pow(logd1, -p.p1) / (8.0 * kPi);
  r.eps_over_4pi = p.eps / (4.0 * kPi);
  r.chain_holds = r.eval.lhs_paper >= r.eval.lambda3_h2_sq &&
                  r.eval.lambda3_h2_sq >= r.eps_over_4pi;
  r.lower_bound_holds = r.eval.lhs_paper >= r.log_bound;
  r.eps_link_held = p.eps >= 0.5 * std::pow(logd1, -p.p1);
  r.ellp1_expected = 2.0 * std::pow(std::log(2.0) / kTwoPi, 1.0 / p.p1);
  return r;
}

Example2Report example2_check(const Example1Params& params, std::size_t grid_n) {
  Example1Params p = params;
  p.power_moduli = true;
  Example2Report r;
  r.eval = example1_evaluate(p, grid_n, 2.0, 0.5);
  const double expo = (2.0 * p.p1 + 1.0) / (2.0 * p.p1);
  r.c_p1 = r.eval.stats.d1 / std::pow(p.eps, expo);
  r.eps_recovered = std::pow(r.eval.stats.d1 / r.c_p1, 1.0 / expo);
  r.eps_link_holds = p.eps >= r.eps_recovered * (1.0 - 1e-9);
  r.lhs_lower_holds = r.eval.lhs_paper >= p.eps / (4.0 * kPi);
  r.qfp1_bound = std::pow(std::log(2.0) / kTwoPi, 1.0 / p.p1) + 1.0;
  r.qfp1_within = r.eval.stats.qfp1 <= r.qfp1_bound * (1.0 + 1e-9);
  return r;
}

void ScalarFamilyParams::resolve() {
  if (!(p > 1.0)) throw precondition_error("scalar family: p must exceed 1");
  const double critical = (p - 1.0) / p;
  if (!(gamma > critical))
    throw precondition_error("scalar family: gamma must exceed (p-1)/p");
  if (!(beta > 0.0 && beta < 1.0))
    throw precondition_error("scalar family: beta must lie in (0,1)");
  if (gamma0 == 0.0) gamma0 = 0.5 * (critical + std::min(gamma, 1.0));
  if (!(gamma0 > critical && gamma0 < gamma))
    throw precondition_error("scalar family: need gamma > gamma0 > (p-1)/p");
  if (alpha == 0.0) {
    alpha = 1.0 - (p - 1.0 + beta) * (1.0 + 1e-3) / (gamma0 * (p + beta));
    if (!(alpha > 0.0))
      throw precondition_error("scalar family: beta too large for this gamma0");
  }
  if (!(gamma0 >= (p - 1.0 + beta) / ((1.0 - alpha) * (p + beta))))
    throw precondition_error("scalar family: gamma0 violates the (alpha, beta) constraint");
  if (tau < 0) {
    tau = 0;
    while (!((tau + 1.0) / (tau + 2.0 - alpha) > gamma0)) ++tau;
  }
  if (!((tau + 1.0) / (tau + 2.0 - alpha) > gamma0))
    throw precondition_error("scalar family: tau too small for gamma0");
}

double ScalarFamilyParams::v0() const {
  // Mean of Im w over the circle equals Im w(0) = -sin(pi alpha / 2).
  return std::sin(kPi * alpha / 2.0);
}

double re_w(double alpha, double theta) {
  if (theta >= 0.0) return 0.0;
  const double t = std::pow(std::abs(std::tan(theta / 2.0)), alpha - 1.0);
  return -t * std::sin(kPi * alpha);
}

double im_w(double alpha, double theta) {
  const double t = std::pow(std::abs(std::tan(theta / 2.0)), alpha - 1.0);
  if (theta < 0.0) return t * std::cos(kPi * alpha);
  return -t;
}

namespace {

double family_f(const ScalarFamilyParams& p, double theta) {
  if (theta < 0.0) return std::pow(-theta, static_cast<double>(p.tau));
  return std::pow(theta, -1.0 / (p.p + p.beta));
}

// |1 - exp((h + i ht)/2)|^2 = 1 - 2 e^{h/2} cos(ht/2) + e^h.
double one_minus_exp_sq(double h, double ht) {
  return 1.0 - 2.0 * std::exp(0.5 * h) * std::cos(0.5 * ht) + std::exp(h);
}

}  // namespace

ScalarFamily scalar_family(const ScalarFamilyParams& params, CircleGrid grid) {
  ScalarFamilyParams p = params;
  if (!p.resolved()) p.resolve();
  const double v0n = p.v0();

  std::vector<cd> fv(grid.size()), gv(grid.size()), hv(grid.size()), htv(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double th = grid.theta(j);
    const double f = family_f(p, th);
    const double h = p.eps * re_w(p.alpha, th);
    fv[j] = f;
    hv[j] = h;
    gv[j] = f * std::exp(h);
    htv[j] = p.eps * (im_w(p.alpha, th) + v0n);
  }

  ScalarFamily out{p,
                   {grid, std::move(fv)},
                   {grid, std::move(gv)},
                   {grid, std::move(hv)},
                   {grid, std::move(htv)},
                   0.0,
                   0.0,
                   ""};
  out.i_eps_lo = 2.0 * std::atan(std::pow(3.0 * kPi + p.eps * v0n, 1.0 / (p.alpha - 1.0)) *
                                 std::pow(p.eps, 1.0 / (1.0 - p.alpha)));
  out.i_eps_hi = 2.0 * std::atan(std::pow(kPi + p.eps * v0n, 1.0 / (p.alpha - 1.0)) *
                                 std::pow(p.eps, 1.0 / (1.0 - p.alpha)));

  // The source text defines v0 without the 1/2pi normalization used
  // elsewhere; decide numerically which constant the grid conjugate matches.
  SampledScalarFunction rew = SampledScalarFunction::sample(
      grid, [&](double th) { return re_w(p.alpha, th); });
  SampledScalarFunction conj = conjugate_function(rew);
  double dev_norm = 0.0, dev_plain = 0.0;
  const double v0_plain = kTwoPi * v0n;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double imw = im_w(p.alpha, grid.theta(j));
    dev_norm += std::abs(conj.values[j].real() - (imw + v0n));
    dev_plain += std::abs(conj.values[j].real() - (imw + v0_plain));
  }
  out.v0_convention = dev_norm <= dev_plain ? "normalized (1/2pi)" : "plain integral";
  return out;
}

DivergenceReport gamma_divergence_check(ScalarFamilyParams params,
                                        const std::vector<double>& eps_sequence) {
  if (!params.resolved()) params.resolve();
  const double alpha = params.alpha;
  const double v0n = params.v0();

  // ||Re w||_L1 is epsilon-independent; graded quadrature with the power-law
  // tail below the cutoff added in closed form.
  GradedRule base;
  base.tail_neg = [alpha](double c) {
    return std::sin(kPi * alpha) * std::pow(2.0, 1.0 - alpha) * std::pow(c, alpha) / alpha;
  };
  const double rew_l1 =
      integrate_circle_graded(
          [alpha](double th) { return std::abs(re_w(alpha, th)); }, base) /
      kTwoPi;

  DivergenceReport report;
  report.params = params;
  for (double eps : eps_sequence) {
    // Panels get more nodes where the conjugate phase sweeps many cycles.
    GradedRule rule;
    rule.panel_nodes_for = [&](double lo, double hi) {
      const double span = 0.5 * eps *
                          (std::pow(std::tan(lo / 2.0), alpha - 1.0) -
                           std::pow(std::tan(hi / 2.0), alpha - 1.0));
      const double want = 64.0 + 4.0 * span / kPi;
      return static_cast<int>(std::min(want, 131072.0));
    };
    const auto integrand = [&](double th) {
      const double h = eps * re_w(alpha, th);
      const double ht = eps * (im_w(alpha, th) + v0n);
      return family_f(params, th) * one_minus_exp_sq(h, ht);
    };
    DivergenceRow row;
    row.eps = eps;
    row.numerator = integrate_circle_graded(integrand, rule) / kTwoPi;
    row.denominator = eps * rew_l1;
    row.ratio = row.numerator / std::pow(row.denominator, params.gamma);
    row.l1_fg = integrate_circle_graded(
                    [&](double th) {
                      if (th >= 0.0) return 0.0;
                      const double h = eps * re_w(alpha, th);
                      return family_f(params, th) * -std::expm1(h);
                    },
                    base) /
                kTwoPi;
    report.rows.push_back(row);
  }

  report.monotone = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const double factor = report.rows[i].ratio / report.rows[i - 1].ratio;
    report.step_factors.push_back(factor);
    if (factor <= 1.0) report.monotone = false;
  }
  for (std::size_t i = 0; i < report.step_factors.size(); ++i) {
    bool all = true;
    for (std::size_t k = i; k < report.step_factors.size(); ++k)
      all = all && report.step_factors[k] >= 2.0;
    if (all) {
      report.onset_eps = report.rows[i].eps;
      break;
    }
  }
  return report;
}

SweepResult sweep(const SweepConfig& config) {
  SweepResult result;
  result.config = config;
  result.cells.resize(config.eps_values.size() * config.theorems.size());

  // Family evaluations are shared across theorems at the same epsilon.
  std::map<double, FamilyEvaluation> eval_cache;
  std::map<double, std::pair<PairStatistics, double>> scalar_cache;  // stats, lhs
  const bool is_scalar = config.family == "scalar6";
  const bool is_ex2 = config.family == "ex2";
  if (!is_scalar && !is_ex2 && config.family != "ex1")
    throw precondition_error("sweep: unknown family '" + config.family + "'");

  for (double eps : config.eps_values) {
    if (is_scalar) {
      ScalarFamilyParams sp = config.scalar_params;
      sp.eps = eps;
      const std::size_t n = config.grid_n == 0 ? (1 << 16) : config.grid_n;
      ScalarFamily fam = scalar_family(sp, CircleGrid(n));
      PairStatistics st;
      st.n = 1;
      st.p0 = config.p0;
      st.p1 = config.p1;
      st.alpha = config.alpha;
      KahanSum d1, dlog, fpow, lhs;
      double finf = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double f = fam.f.values[j].real();
        const double g = fam.g.values[j].real();
        const double h = fam.h.values[j].real();
        d1.add(std::abs(f - g));
        dlog.add(std::abs(h));
        fpow.add(std::pow(f, config.p0));
        finf = std::max(finf, f);
        lhs.add(f * one_minus_exp_sq(h, fam.h_tilde.values[j].real()));
      }
      st.d1 = d1.value() / static_cast<double>(n);
      st.dlogdet = dlog.value() / static_cast<double>(n);
      st.fp0 = std::pow(fpow.value() / static_cast<double>(n), 1.0 / config.p0);
      st.finf = finf;
      scalar_cache.emplace(eps, std::make_pair(st, lhs.value() / static_cast<double>(n)));
    } else {
      Example1Params ep;
      ep.p1 = config.p1;
      ep.eps = eps;
      ep.power_moduli = is_ex2;
      eval_cache.emplace(eps,
                         example1_evaluate(ep, config.grid_n, config.p0, config.alpha));
    }
  }

  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= result.cells.size()) return;
      const double eps = config.eps_values[i / config.theorems.size()];
      const Theorem kind = config.theorems[i % config.theorems.size()];
      SweepCell& cell = result.cells[i];
      cell.eps = eps;
      cell.theorem = theorem_name(kind);
      try {
        BoundReport rep;
        rep.theorem = cell.theorem;
        if (is_scalar) {
          const auto& [st, lhs] = scalar_cache.at(eps);
          rep.stats = st;
          rep.grid_n = config.grid_n == 0 ? (1 << 16) : config.grid_n;
          rep.lhs = lhs;
          rep.rhs = rhs_scalar(kind, st).total;
        } else {
          const FamilyEvaluation& ev = eval_cache.at(eps);
          rep.stats = ev.stats;
          rep.grid_n = ev.grid_n;
          rep.lhs = ev.lhs_canonical;
          rep.rhs = rhs_matrix_power(kind, ev.stats).total;
        }
        rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : (rep.lhs == 0.0 ? 0.0 : kInf);
        rep.violation = rep.lhs > rep.rhs * (1.0 + 1e-6) + 1e-12;
        cell.report = rep;
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
      }
    }
  };
  const unsigned jobs = std::max(1u, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  result.min_ratio = kInf;
  result.max_ratio = 0.0;
  for (const SweepCell& cell : result.cells) {
    if (!cell.ok) {
      result.any_violation = true;
      continue;
    }
    result.any_violation = result.any_violation || cell.report.violation;
    if (std::isfinite(cell.report.ratio)) {
      result.min_ratio = std::min(result.min_ratio, cell.report.ratio);
      result.max_ratio = std::max(result.max_ratio, cell.report.ratio);
    }
  }
  if (!std::isfinite(result.min_ratio)) result.min_ratio = 0.0;

  for (Theorem kind : config.theorems) {
    std::vector<double> xs, ys;
    for (const SweepCell& cell : result.cells)
      if (cell.ok && cell.theorem == theorem_name(kind) && cell.report.lhs > 0.0 &&
          cell.report.stats.d1 > 0.0) {
        xs.push_back(std::log(cell.report.stats.d1));
        ys.push_back(std::log(cell.report.lhs));
      }
    result.fitted_exponents.emplace_back(theorem_name(kind),
                                         least_squares_slope(xs, ys));
  }
  return result;
}

}  // namespace specfact
