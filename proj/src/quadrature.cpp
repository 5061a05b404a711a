#include "specfact/quadrature.hpp"

#include <cmath>

namespace specfact {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa,
                   double b, double fb, double m, double fm, double whole,
                   double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

double midpoint_panel(const std::function<double(double)>& f, double a,
                      double b, int n) {
  KahanSum acc;
  const double h = (b - a) / n;
  for (int i = 0; i < n; ++i) acc.add(f(a + (i + 0.5) * h));
  return acc.value() * h;
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

double integrate_circle_graded(const std::function<double(double)>& f,
                               const GradedRule& rule) {
  KahanSum total;
  const double s0 = std::min(rule.outer_start, kPi);

  // Outer region, uniform midpoint on [-pi, -s0] and [s0, pi].
  if (s0 < kPi) {
    const std::size_t half = rule.outer_nodes / 2;
    total.add(midpoint_panel(f, -kPi, -s0, static_cast<int>(half)));
    total.add(midpoint_panel(f, s0, kPi, static_cast<int>(half)));
  }

  // Geometric panels [s0/2^{m+1}, s0/2^m] toward 0 on each side.
  for (int side = 0; side < 2; ++side) {
    double hi = s0;
    while (hi > rule.cutoff) {
      const double lo = std::max(hi / 2.0, rule.cutoff);
      int n = rule.panel_nodes;
      if (rule.panel_nodes_for) n = std::max(1, rule.panel_nodes_for(lo, hi));
      total.add(side == 0 ? midpoint_panel(f, lo, hi, n)
                          : midpoint_panel(f, -hi, -lo, n));
      hi = lo;
    }
  }

  if (rule.tail_pos) total.add(rule.tail_pos(rule.cutoff));
  if (rule.tail_neg) total.add(rule.tail_neg(rule.cutoff));
  return total.value();
}

}  // namespace specfact
