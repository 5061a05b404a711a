#pragma once

#include <Eigen/Dense>

#include "specfact/common.hpp"

namespace specfact {

// Uniform midpoint grid on the unit circle: theta_j = -pi + (j + 1/2) * 2pi/N.
// The half-step offset keeps integrable boundary singularities at theta = 0
// (and the endpoints +-pi) away from every node.
class CircleGrid {
 public:
  explicit CircleGrid(std::size_t n) : n_(n) {
    if (!is_power_of_two(n) || n < 16)
      throw precondition_error("CircleGrid: N must be a power of two >= 16");
  }

  std::size_t size() const { return n_; }
  double step() const { return kTwoPi / static_cast<double>(n_); }
  double theta(std::size_t j) const {
    return -kPi + (static_cast<double>(j) + 0.5) * step();
  }
  std::vector<double> nodes() const {
    std::vector<double> t(n_);
    for (std::size_t j = 0; j < n_; ++j) t[j] = theta(j);
    return t;
  }

  friend bool operator==(const CircleGrid& a, const CircleGrid& b) {
    return a.n_ == b.n_;
  }

 private:
  std::size_t n_;
};

// Complex boundary values of a scalar function sampled on a CircleGrid.
struct SampledScalarFunction {
  CircleGrid grid;
  std::vector<cd> values;

  SampledScalarFunction(CircleGrid g, std::vector<cd> v)
      : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
      throw precondition_error("SampledScalarFunction: value count != grid size");
  }

  static SampledScalarFunction constant(CircleGrid g, cd c) {
    return {g, std::vector<cd>(g.size(), c)};
  }

  template <typename F>
  static SampledScalarFunction sample(CircleGrid g, F&& f) {
    std::vector<cd> v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) v[j] = cd(f(g.theta(j)));
    return {g, std::move(v)};
  }

  bool is_real(double tol = 1e-12) const {
    double scale = 0.0, imax = 0.0;
    for (const cd& z : values) {
      scale = std::max(scale, std::abs(z.real()));
      imax = std::max(imax, std::abs(z.imag()));
    }
    return imax <= tol * std::max(1.0, scale);
  }
};

// n x n complex matrix per grid node.
struct SampledMatrixFunction {
  CircleGrid grid;
  int dim;
  std::vector<Eigen::MatrixXcd> values;

  SampledMatrixFunction(CircleGrid g, int n, std::vector<Eigen::MatrixXcd> v)
      : grid(g), dim(n), values(std::move(v)) {
    if (dim < 1) throw precondition_error("SampledMatrixFunction: dim must be >= 1");
    if (values.size() != grid.size())
      throw precondition_error("SampledMatrixFunction: value count != grid size");
    for (const auto& m : values)
      if (m.rows() != dim || m.cols() != dim)
        throw precondition_error("SampledMatrixFunction: matrix size mismatch");
  }

  static SampledMatrixFunction constant(CircleGrid g, const Eigen::MatrixXcd& m) {
    return {g, static_cast<int>(m.rows()),
            std::vector<Eigen::MatrixXcd>(g.size(), m)};
  }

  template <typename F>
  static SampledMatrixFunction sample(CircleGrid g, int n, F&& f) {
    std::vector<Eigen::MatrixXcd> v;
    v.reserve(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) v.push_back(f(g.theta(j)));
    return {g, n, std::move(v)};
  }

  static SampledMatrixFunction diagonal(const SampledScalarFunction& f,
                                        const SampledScalarFunction& g) {
    if (!(f.grid == g.grid))
      throw precondition_error("diagonal: grid mismatch");
    std::vector<Eigen::MatrixXcd> v(f.grid.size(), Eigen::MatrixXcd::Zero(2, 2));
    for (std::size_t j = 0; j < f.grid.size(); ++j) {
      v[j](0, 0) = f.values[j];
      v[j](1, 1) = g.values[j];
    }
    return {f.grid, 2, std::move(v)};
  }

  bool is_hermitian(double tol = 1e-10) const {
    for (const auto& m : values) {
      const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
      if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * scale) return false;
    }
    return true;
  }
};

inline void require_compatible(const SampledMatrixFunction& a,
                               const SampledMatrixFunction& b) {
  if (!(a.grid == b.grid) || a.dim != b.dim)
    throw precondition_error("matrix functions have mismatched grid or dimension");
}

}  // namespace specfact
