#pragma once

#include <vector>

#include "mbh/xreal.hpp"

namespace mbh {

inline constexpr double kEulerGamma = 0.57721566490153286061;

// I_0..I_{order_max} or K_0..K_{order_max} at one argument.
struct BesselSeq {
  int order_max = 0;
  double argument = 0.0;
  std::vector<double> values;

  double operator[](int n) const { return values.at(static_cast<std::size_t>(n)); }
};

BesselSeq mod_bessel_i_seq(int order_max, double x);
BesselSeq mod_bessel_k_seq(int order_max, double x);

struct BesselDerivs {
  double iprime = 0.0;
  double kprime = 0.0;
};

// d/dx I_|n|(x) and d/dx K_|n|(x).
BesselDerivs mod_bessel_derivs(int n, double x);

// psi(k) = -gamma + sum_{j<k} 1/j, k >= 1.
double digamma_nonneg_int(int k);

// ---------------------------------------------------------------------------
// Extended-range building blocks.  Jets hold derivatives with respect to x.

// n! for 0 <= n <= 2047.
XReal factorial_x(int n);

std::vector<XReal> bessel_i_seq_x(int order_max, double x);
std::vector<XReal> bessel_k_seq_x(int order_max, double x);

// (f, f', f'') for n = 0..order_max.
std::vector<ScaledJet> bessel_i_jets(int order_max, double x);
std::vector<ScaledJet> bessel_k_jets(int order_max, double x);

// Power series of I_n.  With drop_leading the k = 0 term (x/2)^n/n! is
// omitted, giving I_n(x) - (x/2)^n/n! without cancellation.
ScaledJet bessel_i_series_jet(int n, double x, bool drop_leading);

// Small-argument series of K_n including the digamma sum.  With
// drop_leading the singular term is removed: for n >= 1 the
// 2^{n-1}(n-1)!/x^n term, for n = 0 the -log(x) term (result K_0(x) + log x).
ScaledJet bessel_k_series_jet(int n, double x, bool drop_leading);

namespace detail {

// Below this argument the I and K series are used.
inline constexpr double kBesselSeriesSwitch = 2.0;

// Miller backward recurrence normalised by e^x = I_0 + 2 sum I_k.
std::vector<XReal> bessel_i_miller(int order_max, double x);
// Upward recurrence from continued-fraction K_0, K_1.
std::vector<XReal> bessel_k_recurrence(int order_max, double x);
// Continued-fraction K_0(x) e^x and K_1(x) e^x.
void bessel_k01_scaled_cf(double x, double& k0, double& k1);

}  // namespace detail

}  // namespace mbh
