#include "mbh/fourier.hpp"

#include <fftw3.h>

#include <mutex>
#include <numbers>
#include <string>

#include "mbh/errors.hpp"

namespace mbh {

namespace {

// FFTW's planner is not thread-safe; execution of a finished plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::complex<double>> dft(std::vector<std::complex<double>> in) {
  const int m = static_cast<int>(in.size());
  std::vector<std::complex<double>> out(in.size());
  auto* pin = reinterpret_cast<fftw_complex*>(in.data());
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(m, pin, pout, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

std::vector<double> boundary_angles(int m) {
  std::vector<double> t(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) t[j] = -std::numbers::pi + 2.0 * std::numbers::pi * j / m;
  return t;
}

std::vector<std::complex<double>> boundary_modes(std::span<const std::complex<double>> samples) {
  const int m = static_cast<int>(samples.size());
  if (m == 0 || m % 2 != 0) {
    throw InvalidArgument("boundary_modes: sample count " + std::to_string(m) + " must be even (M = 2N+2)");
  }
  const int n = (m - 2) / 2;
  const auto bins = dft(std::vector<std::complex<double>>(samples.begin(), samples.end()));
  std::vector<std::complex<double>> h(static_cast<std::size_t>(m));
  for (int mode = -n; mode <= n + 1; ++mode) {
    const int bin = ((mode % m) + m) % m;
    const double sign = (mode % 2 == 0) ? 1.0 : -1.0;
    h[mode + n] = bins[bin] * (sign / m);
  }
  return h;
}

std::vector<std::complex<double>> boundary_modes(std::span<const double> samples) {
  std::vector<std::complex<double>> c(samples.begin(), samples.end());
  return boundary_modes(std::span<const std::complex<double>>(c));
}

}  // namespace mbh
