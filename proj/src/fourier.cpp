#include "specfact/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace specfact {

namespace {

// FFTW plan creation is not thread safe; execution through fftw_execute_dft
// is. Plans are cached per size and created with FFTW_UNALIGNED so they can
// run on whatever buffer the caller owns.
struct PlanCache {
  std::mutex mutex;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans;

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(n, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    std::vector<cd> scratch(n);
    fftw_plan p = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(scratch.data()),
        reinterpret_cast<fftw_complex*>(scratch.data()),
        sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void fft_inplace(std::vector<cd>& a, int sign) {
  fftw_plan p = cache().get(a.size(), sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(a.data()),
                   reinterpret_cast<fftw_complex*>(a.data()));
}

// On the midpoint grid e^{ik theta_j} = w_k e^{2pi i jk/N} with
// w_k = e^{ik(h/2 - pi)}, h = 2pi/N, so coefficients are a phase-twisted DFT.
std::vector<cd> spectral_coefficients(const SampledScalarFunction& f) {
  const std::size_t n = f.grid.size();
  std::vector<cd> work = f.values;
  fft_inplace(work, -1);
  std::vector<cd> coeffs(n);
  const double half_step_phase = f.grid.step() / 2.0 - kPi;
  const long half = static_cast<long>(n) / 2;
  for (long k = -half; k < half; ++k) {
    const std::size_t bin = static_cast<std::size_t>((k + static_cast<long>(n)) % static_cast<long>(n));
    const cd w = std::polar(1.0, static_cast<double>(k) * half_step_phase);
    coeffs[static_cast<std::size_t>(k + half)] = work[bin] / (static_cast<double>(n) * w);
  }
  return coeffs;
}

SampledScalarFunction from_coefficients(CircleGrid grid, const std::vector<cd>& coeffs) {
  const std::size_t n = grid.size();
  if (coeffs.size() != n)
    throw precondition_error("from_coefficients: coefficient count != grid size");
  std::vector<cd> work(n);
  const double half_step_phase = grid.step() / 2.0 - kPi;
  const long half = static_cast<long>(n) / 2;
  for (long k = -half; k < half; ++k) {
    const std::size_t bin = static_cast<std::size_t>((k + static_cast<long>(n)) % static_cast<long>(n));
    const cd w = std::polar(1.0, static_cast<double>(k) * half_step_phase);
    work[bin] = coeffs[static_cast<std::size_t>(k + half)] * w;
  }
  fft_inplace(work, +1);
  return {grid, std::move(work)};
}

SampledScalarFunction conjugate_function(const SampledScalarFunction& u) {
  if (!u.is_real(1e-10))
    throw precondition_error("conjugate_function: input must be real-valued");
  std::vector<cd> coeffs = spectral_coefficients(u);
  const long half = static_cast<long>(u.grid.size()) / 2;
  for (long k = -half; k < half; ++k) {
    cd& c = coeffs[static_cast<std::size_t>(k + half)];
    if (k == 0 || k == -half)
      c = 0.0;
    else
      c *= cd(0.0, k > 0 ? -1.0 : 1.0);
  }
  SampledScalarFunction out = from_coefficients(u.grid, coeffs);
  for (cd& z : out.values) z = cd(z.real(), 0.0);
  return out;
}

}  // namespace specfact
