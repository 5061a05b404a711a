#include "specfact/orlicz.hpp"

#include <algorithm>
#include <cmath>

#include "specfact/norms.hpp"

namespace specfact {

namespace {

constexpr double kSaturate = 1e300;

double guarded(double x) { return x > kSaturate ? kInf : x; }

// Log-space bisection for a monotone predicate: smallest x in [lo, hi] with
// pred(x) true (pred monotone false -> true).
double bisect_log(double lo, double hi, const std::function<bool(double)>& pred) {
  if (pred(lo)) return lo;
  if (!pred(hi)) return kInf;
  for (int i = 0; i < 200 && hi / lo > 1.0 + 1e-12; ++i) {
    const double mid = std::sqrt(lo * hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

double NFunction::inverse(double y) const {
  if (inverse_fn) return inverse_fn(y);
  if (y <= 0.0) return 0.0;
  if (std::isinf(y)) return kInf;
  // Phi is increasing and continuous; expand an upper bracket, then bisect.
  double hi = 1.0;
  while ((*this)(hi) < y && hi < 1e280) hi *= 2.0;
  double lo = hi / 2.0;
  while ((*this)(lo) > y && lo > 1e-280) {
    hi = lo;
    lo /= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, lo); ++i) {
    const double mid = 0.5 * (lo + hi);
    ((*this)(mid) >= y ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double NFunction::derivative(double x) const {
  if (derivative_fn) return derivative_fn(x);
  const double h = 1e-7 * std::max(1.0, x);
  return ((*this)(x + h) - (*this)(x)) / h;
}

NFunction NFunction::power(double a) {
  if (!(a > 1.0)) throw precondition_error("NFunction::power: exponent must exceed 1");
  NFunction f;
  f.name = "power";
  f.value_fn = [a](double x) { return guarded(std::pow(x, a) / a); };
  f.inverse_fn = [a](double y) { return std::pow(a * y, 1.0 / a); };
  f.derivative_fn = [a](double x) { return std::pow(x, a - 1.0); };
  return f;
}

NFunction NFunction::exp_a(double p1) {
  if (!(p1 > 0.0)) throw precondition_error("NFunction::exp_a: p1 must be positive");
  NFunction f;
  f.name = "exp_a";
  f.value_fn = [p1](double x) {
    const double t = p1 * x;
    if (t > 690.0) return kInf;
    return std::expm1(t) - t;
  };
  f.inverse_fn = [p1](double y) {
    if (y <= 0.0) return 0.0;
    // Solve e^t - t - 1 = y for t >= 0 by Newton with a log-based start.
    double t = y < 1.0 ? std::sqrt(2.0 * y) : std::log(y + 2.0);
    for (int i = 0; i < 100; ++i) {
      const double g = std::expm1(t) - t - y;
      const double dg = std::expm1(t);
      if (dg <= 0.0) break;
      const double step = g / dg;
      t -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, t)) break;
    }
    return t / p1;
  };
  f.derivative_fn = [p1](double x) {
    const double t = p1 * x;
    return t > 690.0 ? kInf : p1 * std::expm1(t);
  };
  return f;
}

NFunction NFunction::exp_a_conjugate(double p1) {
  if (!(p1 > 0.0))
    throw precondition_error("NFunction::exp_a_conjugate: p1 must be positive");
  // Density of A(p1 t) is p1(e^{p1 t} - 1); its generalized inverse is
  // u(x) = log(1 + x/p1)/p1, so the complementary N-function is
  // ((p1 + x) log(1 + x/p1) - x)/p1.
  NFunction f;
  f.name = "exp_a_conjugate";
  f.value_fn = [p1](double x) {
    return ((p1 + x) * std::log1p(x / p1) - x) / p1;
  };
  f.derivative_fn = [p1](double x) { return std::log1p(x / p1) / p1; };
  return f;
}

NFunction NFunction::from_density(std::vector<std::pair<double, double>> samples,
                                  std::string name) {
  if (samples.empty() || samples.front().first != 0.0)
    throw precondition_error("NFunction::from_density: samples must start at t = 0");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].first <= samples[i - 1].first ||
        samples[i].second < samples[i - 1].second)
      throw precondition_error("NFunction::from_density: density must be nondecreasing");
  if (samples.front().second != 0.0)
    throw precondition_error("NFunction::from_density: u(0) must be 0");

  // Prefix integrals of the step density; u is constant on [t_i, t_{i+1}) and
  // continues with the last positive slope past the final sample so that
  // u(inf) = inf.
  std::vector<double> prefix(samples.size(), 0.0);
  for (std::size_t i = 1; i < samples.size(); ++i)
    prefix[i] = prefix[i - 1] +
                samples[i - 1].second * (samples[i].first - samples[i - 1].first);
  double slope = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i)
    slope = std::max(slope, (samples[i].second - samples[i - 1].second) /
                                (samples[i].first - samples[i - 1].first));
  if (slope <= 0.0) slope = 1.0;

  NFunction f;
  f.name = std::move(name);
  f.value_fn = [samples, prefix, slope](double x) {
    const auto& s = samples;
    if (x <= 0.0) return 0.0;
    auto it = std::upper_bound(
        s.begin(), s.end(), x,
        [](double v, const std::pair<double, double>& e) { return v < e.first; });
    const std::size_t i = static_cast<std::size_t>(it - s.begin()) - 1;
    if (i + 1 < s.size()) return prefix[i] + s[i].second * (x - s[i].first);
    const double dx = x - s.back().first;
    return guarded(prefix.back() + s.back().second * dx + 0.5 * slope * dx * dx);
  };
  return f;
}

OrliczPair OrliczPair::power_pair(double p) {
  if (!(p > 1.0)) throw precondition_error("OrliczPair::power_pair: p must exceed 1");
  OrliczPair pair{Kind::power, p, NFunction::power(p / (p - 1.0)), NFunction::power(p)};
  return pair;
}

OrliczPair OrliczPair::exponential_pair(double p1) {
  OrliczPair pair{Kind::exponential, p1, NFunction::exp_a_conjugate(p1),
                  NFunction::exp_a(p1)};
  return pair;
}

OrliczPair OrliczPair::custom_pair(std::vector<std::pair<double, double>> density_u) {
  // v(x) = sup{tau : u(tau) <= x} is the generalized inverse of the step
  // density; for samples (t_i, u_i) this swaps the roles of t and u.
  std::vector<std::pair<double, double>> density_v;
  density_v.emplace_back(0.0, 0.0);
  for (std::size_t i = 1; i < density_u.size(); ++i) {
    const double u = density_u[i].second;
    if (u > density_v.back().first)
      density_v.emplace_back(u, density_u[i].first);
  }
  OrliczPair pair{Kind::custom, 0.0, NFunction::from_density(density_u, "custom_phi"),
                  NFunction::from_density(density_v, "custom_psi")};
  return pair;
}

double luxemburg_norm(const SampledScalarFunction& f, const NFunction& phi) {
  std::vector<double> mods(f.values.size());
  double vmax = 0.0;
  for (std::size_t j = 0; j < f.values.size(); ++j) {
    mods[j] = std::abs(f.values[j]);
    vmax = std::max(vmax, mods[j]);
  }
  if (vmax == 0.0) return 0.0;

  const auto mean_phi_le_1 = [&](double kappa) {
    KahanSum acc;
    for (double m : mods) {
      const double v = phi(m / kappa);
      if (std::isinf(v)) return false;
      acc.add(v);
    }
    return acc.value() / static_cast<double>(mods.size()) <= 1.0;
  };
  return bisect_log(1e-12, 1e12, mean_phi_le_1);
}

double orlicz_norm_power(const SampledScalarFunction& f, double p) {
  if (!(p > 1.0)) throw precondition_error("orlicz_norm_power: p must exceed 1");
  const double q = p / (p - 1.0);
  return std::pow(q, 1.0 / q) * lp_norm(f, p);
}

double lambda_phi(const NFunction& phi, double s) {
  if (!(s > 0.0)) throw precondition_error("lambda_phi: s must be positive");
  const auto ok = [&](double xi) {
    const double d = phi.derivative(1.0 / xi);
    return d / xi <= 1.0 / s;
  };
  return bisect_log(1e-14, 1e14, ok);
}

double r_psi(const NFunction& psi, double tau) {
  if (!(tau > 0.0)) throw precondition_error("r_psi: tau must be positive");
  return tau * psi.inverse(4.0 / tau);
}

double interp_bound(const SampledScalarFunction& u, const OrliczPair& pair) {
  const double l1 = lp_norm(u, 1.0);
  if (l1 == 0.0) return 0.0;
  const double linf = lp_norm(u, kInf);
  return l1 * pair.psi.inverse(linf / l1);
}

RhoPi rho_and_pi(const SampledScalarFunction& ell, const NFunction& psi1) {
  for (const cd& z : ell.values)
    if (z.real() > 1e-12 || std::abs(z.imag()) > 1e-12)
      throw precondition_error("rho_and_pi: ell must be real and <= 0 pointwise");
  KahanSum acc;
  bool overflow = false;
  for (const cd& z : ell.values) {
    const double v = psi1(std::abs(z.real()));
    if (std::isinf(v)) {
      overflow = true;
      break;
    }
    acc.add(v);
  }
  const double rho =
      overflow ? kInf : acc.value() / static_cast<double>(ell.values.size());
  const double lux = luxemburg_norm(ell, psi1);
  const double pi = (std::isinf(rho) || std::isinf(lux))
                        ? (lux == 0.0 ? 0.0 : kInf)
                        : lux * std::max(1.0, rho);
  return {rho, pi};
}

}  // namespace specfact
