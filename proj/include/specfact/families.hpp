#pragma once

#include <array>
#include <cstdint>

#include "specfact/bounds.hpp"

namespace specfact {

// Parameters of the two-by-two counterexample pairs. `power_moduli` switches
// from the exponential moduli of the first construction to the power moduli
// of the second; delta defaults to the construction's own choice.
struct Example1Params {
  double p1 = 2.0;
  double eps = 1e-2;
  std::optional<double> delta;
  bool power_moduli = false;

  double resolved_delta() const;
};

// Smallest admissible grid for resolving [eps, 2*eps]: at least 64 nodes in
// the arc, chosen as 2^ceil(log2(256 pi / eps)) and never below 2^14.
std::size_t example1_auto_grid(double eps);

struct Example1Pair {
  SampledMatrixFunction f;
  SampledMatrixFunction g;
  SampledMatrixFunction f_plus;  // the construction's own factor representatives
  SampledMatrixFunction g_plus;
};

// Materializes F, G and their factor representatives on the given grid.
// Throws if the grid has fewer than 64 nodes in [eps, 2*eps].
Example1Pair example1_pair(const Example1Params& params, CircleGrid grid);
Example1Pair example2_pair(const Example1Params& params, CircleGrid grid);

// Streaming evaluation: all pair statistics plus both H2 distances, without
// materializing matrix functions (the large-grid path).
struct FamilyEvaluation {
  PairStatistics stats;
  double lhs_paper = 0.0;      // squared H2 distance of the representatives
  double lhs_canonical = 0.0;  // after canonical normalization at the origin
  double lambda3_h2_sq = 0.0;
  std::size_t grid_n = 0;
};
FamilyEvaluation example1_evaluate(const Example1Params& params, std::size_t grid_n,
                                   double p0, double alpha);

struct LowerBoundReport {
  FamilyEvaluation eval;
  double log_bound = 0.0;  // |log ||G-F||_1|^{-p1} / 8pi
  double eps_over_4pi = 0.0;
  bool chain_holds = false;       // lhs >= ||lambda3||^2 >= eps/4pi
  bool lower_bound_holds = false; // lhs >= log_bound
  bool eps_link_held = false;     // eps >= |log ||G-F||_1|^{-p1} / 2
  double ellp1_expected = 0.0;    // 2 (log2 / 2pi)^{1/p1}
};
// Both sides of the log-power lower bound, with the construction's own
// factor representatives. grid_n = 0 picks the auto grid.
LowerBoundReport example1_lower_bound_check(const Example1Params& params,
                                            std::size_t grid_n = 0);

struct Example2Report {
  FamilyEvaluation eval;
  double eps_recovered = 0.0;  // (||G-F||_1 / C_p1)^{2p1/(2p1+1)}
  double c_p1 = 0.0;           // measured d1 / eps^{(2p1+1)/(2p1)}
  bool eps_link_holds = false;
  bool lhs_lower_holds = false;  // lhs >= eps / 4pi
  double qfp1_bound = 0.0;       // (log2/2pi)^{1/p1} + 1
  bool qfp1_within = false;
};
Example2Report example2_check(const Example1Params& params, std::size_t grid_n = 0);

// Parameters of the scalar two-sided family. resolve() fills the derived
// defaults: gamma0 halfway between (p-1)/p and gamma, alpha at the constraint
// boundary with 1e-3 slack, tau the smallest admissible integer.
struct ScalarFamilyParams {
  double p = 2.0;
  double gamma = 0.6;
  double gamma0 = 0.0;  // 0 -> derived
  double alpha = 0.0;   // 0 -> derived
  double beta = 0.1;
  int tau = -1;  // < 0 -> derived
  double eps = 1e-2;

  void resolve();
  bool resolved() const { return gamma0 > 0.0 && alpha > 0.0 && tau >= 0; }
  double v0() const;  // -mean(Im w) = sin(pi alpha / 2)
};

// Boundary values of the conformal building block w.
double re_w(double alpha, double theta);
double im_w(double alpha, double theta);

struct ScalarFamily {
  ScalarFamilyParams params;
  SampledScalarFunction f;
  SampledScalarFunction g;        // f * exp(h)
  SampledScalarFunction h;        // eps * Re w
  SampledScalarFunction h_tilde;  // eps * (Im w + v0)
  double i_eps_lo = 0.0;          // arctan endpoints of the bad interval
  double i_eps_hi = 0.0;
  std::string v0_convention;      // which normalization matched the grid conjugate
};
ScalarFamily scalar_family(const ScalarFamilyParams& params, CircleGrid grid);

// One epsilon row of the divergence experiment.
struct DivergenceRow {
  double eps = 0.0;
  double numerator = 0.0;    // ||f+ - g_eps+||_H2^2 via the multiplicative form
  double denominator = 0.0;  // ||log f - log g_eps||_L1
  double ratio = 0.0;        // numerator / denominator^gamma
  double l1_fg = 0.0;        // ||f - g_eps||_L1
};
struct DivergenceReport {
  ScalarFamilyParams params;
  std::vector<DivergenceRow> rows;
  std::vector<double> step_factors;  // ratio[i+1] / ratio[i]
  bool monotone = false;
  double onset_eps = 0.0;  // largest eps from which every step factor >= 2
};
DivergenceReport gamma_divergence_check(ScalarFamilyParams params,
                                        const std::vector<double>& eps_sequence);

// Sweep driver over (family instance, theorem) cells.
struct SweepConfig {
  std::string family;  // "ex1" | "ex2" | "scalar6"
  std::vector<double> eps_values;
  std::vector<Theorem> theorems;
  double p0 = 2.0;
  double p1 = 2.0;
  double alpha = 0.5;
  std::size_t grid_n = 0;  // 0 -> auto per eps
  unsigned jobs = 1;
  ScalarFamilyParams scalar_params;
  std::uint64_t seed = 1;
};

struct SweepCell {
  double eps = 0.0;
  std::string theorem;
  BoundReport report;
  bool ok = false;
  std::string error;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepCell> cells;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  bool any_violation = false;
  // Slope of log(lhs) against log(d1) over the sweep, per theorem.
  std::vector<std::pair<std::string, double>> fitted_exponents;
};
SweepResult sweep(const SweepConfig& config);

}  // namespace specfact
