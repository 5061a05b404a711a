#pragma once

#include <functional>

#include "specfact/common.hpp"

namespace specfact {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12, int max_depth = 40);

// Composite midpoint rule over (-pi, pi) with geometric refinement (ratio 2)
// toward theta = 0 on both sides, for integrands with an integrable
// singularity there. Returns the plain integral (no 1/2pi).
struct GradedRule {
  double outer_start = 1.0;  // |theta| >= outer_start handled uniformly
  std::size_t outer_nodes = 1 << 12;
  double cutoff = 1e-12;  // innermost resolved |theta|
  int panel_nodes = 64;
  // Optional per-panel node count (lo, hi are the panel bounds, 0 < lo < hi);
  // used for oscillatory integrands where the phase grows toward 0.
  std::function<int(double, double)> panel_nodes_for;
  // Optional analytic estimates of the integral over (0, cutoff].
  std::function<double(double)> tail_pos, tail_neg;
};

double integrate_circle_graded(const std::function<double(double)>& f,
                               const GradedRule& rule = {});

}  // namespace specfact
