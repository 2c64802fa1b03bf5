#include "mbh/bessel.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "mbh/errors.hpp"

namespace mbh {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxTerms = 500;
constexpr int kTableSize = 2048;
constexpr double kMaxIArgument = 700.0;

const std::vector<XReal>& factorial_table() {
  static const std::vector<XReal> table = [] {
    std::vector<XReal> t(kTableSize);
    long double m = 1.0L;
    std::int64_t e = 0;
    t[0] = XReal(1.0);
    for (int n = 1; n < kTableSize; ++n) {
      m *= static_cast<long double>(n);
      int k = 0;
      m = std::frexp(m, &k);
      e += k;
      t[n] = XReal::from_parts(static_cast<double>(m), e);
    }
    return t;
  }();
  return table;
}

const std::vector<double>& digamma_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kTableSize + kMaxTerms + 2);
    long double h = 0.0L;
    t[0] = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 1; k < t.size(); ++k) {
      t[k] = static_cast<double>(h - static_cast<long double>(kEulerGamma));
      h += 1.0L / static_cast<long double>(k);
    }
    return t;
  }();
  return table;
}

double psi(int k) { return digamma_table()[static_cast<std::size_t>(k)]; }

void check_order(int order_max) {
  if (order_max < 0) throw InvalidArgument("bessel: negative order");
  if (order_max >= kTableSize - 2) throw InvalidArgument("bessel: order too large");
}

// Exact derivatives at x = 0 of I_n or of I_n minus its leading term.
ScaledJet i_series_at_zero(int n, bool drop_leading) {
  ScaledJet j;
  if (!drop_leading) {
    if (n == 0) j = {1.0, 0.0, 0.5, 0};
    if (n == 1) j = {0.0, 0.5, 0.0, 0};
    if (n == 2) j = {0.0, 0.0, 0.25, 0};
  } else if (n == 0) {
    j = {0.0, 0.0, 0.5, 0};
  }
  return ScaledJet::from(XReal(j.v), XReal(j.d1), XReal(j.d2));
}

// Derivatives above the series switch from the Bessel identities.
ScaledJet i_jet_from_seq(const std::vector<XReal>& seq, int n, double x) {
  const XReal in = seq[n];
  const XReal lo = n == 0 ? seq[1] : seq[n - 1];
  const XReal d1 = (lo + seq[n + 1]) * XReal(0.5);
  const double nx = static_cast<double>(n) / x;
  const XReal d2 = in * XReal(1.0 + nx * nx) - d1 / XReal(x);
  return ScaledJet::from(in, d1, d2);
}

ScaledJet k_jet_from_seq(const std::vector<XReal>& seq, int n, double x) {
  const XReal kn = seq[n];
  const XReal lo = n == 0 ? seq[1] : seq[n - 1];
  const XReal d1 = -((lo + seq[n + 1]) * XReal(0.5));
  const double nx = static_cast<double>(n) / x;
  const XReal d2 = kn * XReal(1.0 + nx * nx) - d1 / XReal(x);
  return ScaledJet::from(kn, d1, d2);
}

// Highest order taken from the Miller recurrence; orders above it (and all
// orders for x <= 2) use the power series, whose terms decay at least like
// 1/(4k) once x^2 <= n + 1.
int miller_top(int order_max, double x) {
  if (x <= detail::kBesselSeriesSwitch) return -1;
  const int limit = static_cast<int>(std::ceil(x * x)) - 2;
  return std::min(order_max, limit);
}

}  // namespace

XReal factorial_x(int n) {
  if (n < 0 || n >= kTableSize) throw InvalidArgument("factorial out of table range");
  return factorial_table()[static_cast<std::size_t>(n)];
}

double digamma_nonneg_int(int k) {
  if (k < 1) throw InvalidArgument("digamma_nonneg_int: k must be >= 1");
  if (k >= static_cast<int>(digamma_table().size())) {
    long double h = 0.0L;
    for (int j = 1; j < k; ++j) h += 1.0L / j;
    return static_cast<double>(h - static_cast<long double>(kEulerGamma));
  }
  return psi(k);
}

ScaledJet bessel_i_series_jet(int n, double x, bool drop_leading) {
  n = std::abs(n);
  if (x == 0.0) return i_series_at_zero(n, drop_leading);
  const double t = 0.5 * x;
  const double t2 = t * t;
  const int k0 = drop_leading ? 1 : 0;
  const XReal pre = pow(XReal(t), n + 2 * k0) / factorial_x(n + k0);

  double tau = 1.0;
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (int k = k0;; ++k) {
    if (k > k0) tau *= t2 / (static_cast<double>(k) * (n + k));
    const double p = n + 2.0 * k;
    s0 += tau;
    s1 += p * tau;
    s2 += p * (p - 1.0) * tau;
    if (tau <= kEps * s0 && p * tau <= kEps * s1 && p * p * tau <= kEps * s2) break;
    if (k - k0 >= kMaxTerms) throw ConvergenceError("I series did not converge");
  }
  return ScaledJet::from(pre * XReal(s0), pre * XReal(s1 / x), pre * XReal(s2 / (x * x)));
}

ScaledJet bessel_k_series_jet(int n, double x, bool drop_leading) {
  n = std::abs(n);
  if (!(x > 0.0)) throw InvalidArgument("K series requires x > 0");
  const double t = 0.5 * x;
  const double t2 = t * t;
  const double lt = std::log(t);

  XReal v(0.0), xd1(0.0), x2d2(0.0);

  if (n >= 1) {
    const XReal pre = factorial_x(n - 1) * pow(XReal(t), -n) * XReal(0.5);
    double a = 1.0;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k > 0) a *= -t2 / (static_cast<double>(k) * (n - k));
      if (k == 0 && drop_leading) continue;
      const double p = 2.0 * k - n;
      s0 += a;
      s1 += p * a;
      s2 += p * (p - 1.0) * a;
    }
    v += pre * XReal(s0);
    xd1 += pre * XReal(s1);
    x2d2 += pre * XReal(s2);
  }

  const XReal pre = pow(XReal(t), n) / factorial_x(n);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const bool skip_log0 = (n == 0 && drop_leading);
  double tau = 1.0;
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  for (int k = 0;; ++k) {
    if (k > 0) tau *= t2 / (static_cast<double>(k) * (n + k));
    const double p = n + 2.0 * k;
    if (!(skip_log0 && k == 0)) {
      b0 += lt * tau;
      b1 += (1.0 + p * lt) * tau;
      b2 += ((2.0 * p - 1.0) + p * (p - 1.0) * lt) * tau;
    }
    const double ps = psi(k + 1) + psi(n + k + 1);
    c0 += ps * tau;
    c1 += p * ps * tau;
    c2 += p * (p - 1.0) * ps * tau;
    const double mag = tau * (1.0 + std::fabs(lt)) * (1.0 + std::fabs(ps)) * (1.0 + p * p);
    const double ref = std::fabs(b0) + std::fabs(c0) + std::fabs(b2) + std::fabs(c2);
    if (k > 0 && mag <= kEps * ref) break;
    if (k >= kMaxTerms) throw ConvergenceError("K series did not converge");
  }
  const XReal fb = -(pre * XReal(sign));
  const XReal fc = pre * XReal(0.5 * sign);
  v += fb * XReal(b0) + fc * XReal(c0);
  xd1 += fb * XReal(b1) + fc * XReal(c1);
  x2d2 += fb * XReal(b2) + fc * XReal(c2);
  if (skip_log0) v += XReal(0.69314718055994530942);

  return ScaledJet::from(v, xd1 / XReal(x), x2d2 / XReal(x * x));
}

namespace detail {

std::vector<XReal> bessel_i_miller(int order_max, double x) {
  const double big = std::max(static_cast<double>(order_max), x);
  const int start = static_cast<int>(big + 30.0 + 8.0 * std::sqrt(big)) + 1;
  constexpr double kRescale = 0x1p600;

  std::vector<XReal> out(static_cast<std::size_t>(order_max) + 1);
  double b = 1.0, bp = 0.0;
  std::int64_t shift = 0;
  XReal tail(0.0);
  for (int k = start; k >= 1; --k) {
    const XReal bk = XReal::from_parts(b, shift);
    if (k <= order_max) out[k] = bk;
    tail += bk;
    const double bm = (2.0 * k / x) * b + bp;
    bp = b;
    b = bm;
    if (std::fabs(b) > kRescale) {
      b = std::ldexp(b, -600);
      bp = std::ldexp(bp, -600);
      shift += 600;
    }
  }
  out[0] = XReal::from_parts(b, shift);
  const XReal norm = out[0] + tail * XReal(2.0);
  const XReal scale = xexp(x) / norm;
  for (auto& v : out) v *= scale;
  return out;
}

void bessel_k01_scaled_cf(double x, double& k0, double& k1) {
  // Steed's method for the second continued fraction at order 0.
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1;; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < kEps) break;
    if (i >= 100000) throw ConvergenceError("K continued fraction did not converge");
  }
  h = a1 * h;
  k0 = std::sqrt(3.14159265358979323846 / (2.0 * x)) / s;
  k1 = k0 * (x + 0.5 - h) / x;
}

std::vector<XReal> bessel_k_recurrence(int order_max, double x) {
  double k0 = 0.0, k1 = 0.0;
  bessel_k01_scaled_cf(x, k0, k1);
  const XReal ex = xexp(-x);
  std::vector<XReal> out(static_cast<std::size_t>(order_max) + 1);
  out[0] = XReal(k0) * ex;
  if (order_max == 0) return out;
  double a = k0, b = k1;
  std::int64_t shift = 0;
  out[1] = XReal(k1) * ex;
  for (int n = 1; n < order_max; ++n) {
    const double c = (2.0 * n / x) * b + a;
    a = b;
    b = c;
    if (std::fabs(b) > 0x1p600) {
      a = std::ldexp(a, -600);
      b = std::ldexp(b, -600);
      shift += 600;
    }
    out[n + 1] = XReal::from_parts(b, shift) * ex;
  }
  return out;
}

}  // namespace detail

std::vector<XReal> bessel_i_seq_x(int order_max, double x) {
  check_order(order_max);
  const int top = miller_top(order_max, x);
  std::vector<XReal> out = top >= 0 ? detail::bessel_i_miller(top, x) : std::vector<XReal>{};
  out.resize(static_cast<std::size_t>(order_max) + 1);
  for (int n = top + 1; n <= order_max; ++n) out[n] = bessel_i_series_jet(n, x, false).value();
  return out;
}

std::vector<XReal> bessel_k_seq_x(int order_max, double x) {
  check_order(order_max);
  if (x <= detail::kBesselSeriesSwitch) {
    std::vector<XReal> out(static_cast<std::size_t>(order_max) + 1);
    for (int n = 0; n <= order_max; ++n) out[n] = bessel_k_series_jet(n, x, false).value();
    return out;
  }
  return detail::bessel_k_recurrence(order_max, x);
}

std::vector<ScaledJet> bessel_i_jets(int order_max, double x) {
  check_order(order_max);
  std::vector<ScaledJet> out(static_cast<std::size_t>(order_max) + 1);
  const int top = miller_top(order_max, x);
  if (top >= 0) {
    const auto seq = detail::bessel_i_miller(top + 1, x);
    for (int n = 0; n <= top; ++n) out[n] = i_jet_from_seq(seq, n, x);
  }
  for (int n = top + 1; n <= order_max; ++n) out[n] = bessel_i_series_jet(n, x, false);
  return out;
}

std::vector<ScaledJet> bessel_k_jets(int order_max, double x) {
  check_order(order_max);
  std::vector<ScaledJet> out(static_cast<std::size_t>(order_max) + 1);
  if (x <= detail::kBesselSeriesSwitch) {
    for (int n = 0; n <= order_max; ++n) out[n] = bessel_k_series_jet(n, x, false);
    return out;
  }
  const auto seq = detail::bessel_k_recurrence(order_max + 1, x);
  for (int n = 0; n <= order_max; ++n) out[n] = k_jet_from_seq(seq, n, x);
  return out;
}

BesselSeq mod_bessel_i_seq(int order_max, double x) {
  if (!std::isfinite(x) || x < 0.0) throw InvalidArgument("mod_bessel_i_seq: x must be finite and >= 0");
  check_order(order_max);
  if (x > kMaxIArgument) throw OverflowError("mod_bessel_i_seq: argument beyond supported range");
  BesselSeq seq{order_max, x, std::vector<double>(static_cast<std::size_t>(order_max) + 1)};
  const auto v = bessel_i_seq_x(order_max, x);
  for (int n = 0; n <= order_max; ++n) seq.values[n] = v[n].to_double();
  return seq;
}

BesselSeq mod_bessel_k_seq(int order_max, double x) {
  if (!std::isfinite(x) || !(x > 0.0)) throw InvalidArgument("mod_bessel_k_seq: x must be finite and > 0");
  check_order(order_max);
  BesselSeq seq{order_max, x, std::vector<double>(static_cast<std::size_t>(order_max) + 1)};
  const auto v = bessel_k_seq_x(order_max, x);
  for (int n = 0; n <= order_max; ++n) {
    seq.values[n] = v[n].to_double();
    if (!std::isfinite(seq.values[n])) {
      throw OverflowError("mod_bessel_k_seq: K_" + std::to_string(n) + " overflows");
    }
  }
  return seq;
}

BesselDerivs mod_bessel_derivs(int n, double x) {
  if (!std::isfinite(x) || !(x > 0.0)) throw InvalidArgument("mod_bessel_derivs: x must be > 0");
  const int m = std::abs(n);
  const auto i = mod_bessel_i_seq(m + 1, x);
  const auto k = mod_bessel_k_seq(m + 1, x);
  const int lo = m == 0 ? 1 : m - 1;
  return {0.5 * (i[lo] + i[m + 1]), -0.5 * (k[lo] + k[m + 1])};
}

}  // namespace mbh
