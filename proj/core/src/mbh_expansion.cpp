#include "mbh/mbh_expansion.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "expansion_common.hpp"
#include "mbh/bessel.hpp"
#include "mbh/stable_basis.hpp"

namespace mbh {

namespace {

using detail::alt_sign;

struct Shift {
  double rho = 0.0;
  double theta = 0.0;
  std::vector<std::complex<double>> phase;  // e^{-ik theta}, k = -2p..2p
  int p = 0;

  Shift(const Vec2& from, const Vec2& to, int order) : p(order) {
    const Polar s = to_polar({to[0] - from[0], to[1] - from[1]});
    rho = s.rho;
    theta = s.theta;
    phase.resize(static_cast<std::size_t>(4 * p) + 1);
    for (int k = -2 * p; k <= 2 * p; ++k) phase[k + 2 * p] = detail::shift_phase(k, theta);
  }
  const std::complex<double>& e(int k) const { return phase[static_cast<std::size_t>(k + 2 * p)]; }
};

// 1 / (2^|l| |l|!)
XReal local_prefactor(int l) {
  l = std::abs(l);
  return detail::pow2_neg(l) / factorial_x(l);
}

std::vector<XReal> p_values(int kmax, double lambda, double rho) {
  std::vector<XReal> v(static_cast<std::size_t>(kmax) + 1);
  for (int k = 0; k <= kmax; ++k) v[k] = p_jet(k, lambda, rho).value();
  return v;
}

std::vector<XReal> q_values(int kmax, double lambda, double rho) {
  std::vector<XReal> v(static_cast<std::size_t>(kmax) + 1);
  for (int k = 0; k <= kmax; ++k) v[k] = q_jet(k, lambda, rho).value();
  return v;
}

// (lambda rho/2)^k / k!
std::vector<XReal> lead_values(int kmax, double lambda, double rho) {
  std::vector<XReal> v(static_cast<std::size_t>(kmax) + 1);
  const XReal h(0.5 * lambda * rho);
  for (int k = 0; k <= kmax; ++k) v[k] = pow(h, k) / factorial_x(k);
  return v;
}

std::vector<std::vector<double>> binomials(int n) {
  std::vector<std::vector<double>> t(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    t[i].assign(static_cast<std::size_t>(i) + 1, 1.0);
    for (int k = 1; k < i; ++k) t[i][k] = t[i - 1][k - 1] + t[i - 1][k];
  }
  return t;
}

void add_source(MbhMultipole& e, const PointSource& s, double lambda) {
  const int p = e.order;
  const Polar ps = to_polar({s.location[0] - e.center[0], s.location[1] - e.center[1]});
  const double wc = lambda * lambda * s.charge, wd = lambda * s.dipole_weight, wq = s.quad_weight;
  for (int n = 0; n <= p; ++n) {
    ScaledJet lead, pj;
    if (ps.rho == 0.0) {
      const double l2 = lambda * lambda;
      lead = detail::origin_jet(n == 0 ? 1.0 : 0.0, n == 1 ? 0.5 * lambda : 0.0, n == 2 ? 0.25 * l2 : 0.0);
      pj = detail::origin_jet(0.0, 0.0, n == 0 ? 0.5 * l2 : 0.0);
    } else {
      const XReal v = pow(XReal(0.5 * lambda * ps.rho), n) / factorial_x(n);
      lead = ScaledJet::from(v, v * XReal(n / ps.rho), v * XReal(n * (n - 1.0) / (ps.rho * ps.rho)));
      pj = p_jet(n, lambda, ps.rho);
    }
    for (int l : {n, -n}) {
      e.a(l) += detail::weighted_source_term(s, wc, wd, wq, lead, -l, ps);
      e.b(l) += detail::weighted_source_term(s, wc, wd, wq, pj, -l, ps);
      if (n == 0) break;
    }
  }
}

}  // namespace

MbhMultipole mbh_zero_multipole(const Vec2& center, double lambda, int p) {
  detail::check_order(p);
  detail::check_lambda_positive(lambda);
  MbhMultipole e;
  e.center = center;
  e.lambda = lambda;
  e.order = p;
  e.q_coeffs.assign(static_cast<std::size_t>(2 * p + 1), XComplex{});
  e.k_coeffs = e.q_coeffs;
  return e;
}

MbhLocal mbh_zero_local(const Vec2& center, double lambda, int p) {
  detail::check_order(p);
  detail::check_lambda_positive(lambda);
  MbhLocal e;
  e.center = center;
  e.lambda = lambda;
  e.order = p;
  e.p_coeffs.assign(static_cast<std::size_t>(2 * p + 1), XComplex{});
  e.pow_coeffs = e.p_coeffs;
  return e;
}

MbhMultipole mbh_source_to_multipole(std::span<const PointSource> sources, const Vec2& center, double lambda,
                                     int p, double radius) {
  MbhMultipole e = mbh_zero_multipole(center, lambda, p);
  e.radius = radius;
  detail::check_sources_within(sources, center, radius);
  for (const PointSource& s : sources) add_source(e, s, lambda);
  const XReal scale(-1.0 / (2.0 * std::numbers::pi * lambda * lambda));
  for (auto& c : e.q_coeffs) c = c * scale;
  for (auto& c : e.k_coeffs) c = c * scale;
  return e;
}

FieldSample mbh_eval_multipole(const MbhMultipole& e, const Vec2& x, Diagnostics* diag) {
  const Polar p = to_polar({x[0] - e.center[0], x[1] - e.center[1]});
  if (p.rho == 0.0) throw InvalidArgument("mbh_eval_multipole: target at the expansion center");
  if (e.radius > 0.0 && p.rho <= e.radius) warn(diag, "mbh_eval_multipole: target inside the source disk");
  const auto pairs = radial_pairs(BasisTag::ExtStable, e.order, e.lambda, p.rho);
  ComplexField total;
  for (int l = -e.order; l <= e.order; ++l) {
    const auto& [q, k] = pairs[static_cast<std::size_t>(std::abs(l))];
    detail::add_mode(total, l, e.a(l), q, e.b(l), k, p);
  }
  return total.real();
}

FieldSample mbh_eval_local(const MbhLocal& e, const Vec2& x, Diagnostics* diag) {
  const Polar p = to_polar({x[0] - e.center[0], x[1] - e.center[1]});
  if (e.radius > 0.0 && p.rho > e.radius) warn(diag, "mbh_eval_local: target outside the local disk");
  std::vector<std::pair<ScaledJet, ScaledJet>> pairs;
  if (p.rho == 0.0) {
    const double l2 = e.lambda * e.lambda;
    pairs.resize(static_cast<std::size_t>(e.order) + 1);
    for (int n = 0; n <= e.order; ++n) {
      pairs[n].first = detail::origin_jet(n == 0 ? 1.0 : 0.0, n == 1 ? 1.0 : 0.0, n == 2 ? 2.0 : 0.0);
      pairs[n].second = detail::origin_jet(0.0, 0.0, n == 0 ? 0.5 * l2 : 0.0);
    }
  } else {
    pairs = radial_pairs(BasisTag::IntStable, e.order, e.lambda, p.rho);
  }
  ComplexField total;
  for (int l = -e.order; l <= e.order; ++l) {
    const int n = std::abs(l);
    const auto& [pw, pj] = pairs[static_cast<std::size_t>(n)];
    detail::add_mode(total, l, e.d(l) * pow(XReal(e.lambda), n), pw, e.c(l), pj, p);
  }
  return total.real();
}

MbhMultipole mbh_m2m(const MbhMultipole& src, const Vec2& new_center) {
  const int p = src.order;
  const Shift s(new_center, src.center, p);
  MbhMultipole out = src;
  out.center = new_center;
  if (s.rho == 0.0) return out;
  out.radius = src.radius > 0.0 ? src.radius + s.rho : 0.0;
  const double x = src.lambda * s.rho;
  const auto iv = bessel_i_seq_x(2 * p, x);
  const auto pv = p_values(p, src.lambda, s.rho);
  const auto lead = lead_values(p, src.lambda, s.rho);
  for (int l = -p; l <= p; ++l) {
    XComplex c, d;
    for (int m = -p; m <= p; ++m) {
      const XComplex& a = src.a(m);
      const XComplex& b = src.b(m);
      if (a.is_zero() && b.is_zero()) continue;
      const int k = l - m, ak = std::abs(k);
      const bool band = l >= 0 ? (m >= 0 && m <= l) : (m <= 0 && m >= l);
      if (band) {
        c += a * lead[ak] * s.e(k);
        d += (a * pv[ak] + b * iv[ak]) * s.e(k);
      } else {
        d += (a + b) * iv[ak] * s.e(k);
      }
    }
    out.a(l) = c;
    out.b(l) = d;
  }
  return out;
}

MbhLocal mbh_m2l(const MbhMultipole& src, const Vec2& new_center, Diagnostics* diag) {
  const int p = src.order;
  const Shift s(new_center, src.center, p);
  if (s.rho == 0.0) throw InvalidArgument("mbh_m2l: centers coincide");
  if (src.radius > 0.0 && s.rho <= src.radius) warn(diag, "mbh_m2l: target center inside the source disk");
  MbhLocal out = mbh_zero_local(new_center, src.lambda, p);
  out.radius = src.radius > 0.0 ? s.rho - src.radius : 0.0;
  const auto kv = bessel_k_seq_x(2 * p, src.lambda * s.rho);
  const auto qv = q_values(2 * p, src.lambda, s.rho);
  for (int l = -p; l <= p; ++l) {
    XComplex c, d;
    for (int m = -p; m <= p; ++m) {
      const XComplex& a = src.a(m);
      const XComplex& b = src.b(m);
      if (a.is_zero() && b.is_zero()) continue;
      const int k = l - m, ak = std::abs(k);
      const XComplex ab = (a + b) * alt_sign(m);
      c += ab * kv[ak] * s.e(k);
      const bool coupled = l == 0 || m == 0 || ((l > 0) != (m > 0));
      if (coupled) {
        d += (a * qv[ak] + b * kv[ak]) * alt_sign(m) * s.e(k);
      } else {
        d += ab * kv[ak] * s.e(k);
      }
    }
    out.c(l) = c;
    out.d(l) = d * local_prefactor(l);
  }
  return out;
}

MbhLocal mbh_l2l(const MbhLocal& src, const Vec2& new_center) {
  const int p = src.order;
  const Shift s(src.center, new_center, p);
  MbhLocal out = src;
  out.center = new_center;
  if (s.rho == 0.0) return out;
  out.radius = src.radius > 0.0 ? std::max(0.0, src.radius - s.rho) : 0.0;
  const double x = src.lambda * s.rho;
  const auto iv = bessel_i_seq_x(2 * p, x);
  const auto pv = p_values(p, src.lambda, s.rho);
  const auto bin = binomials(p);
  std::vector<XReal> xp(static_cast<std::size_t>(p) + 1);
  for (int k = 0; k <= p; ++k) xp[k] = pow(XReal(x), k);
  for (int l = -p; l <= p; ++l) {
    XComplex c, dp, dw;
    for (int m = -p; m <= p; ++m) {
      const XComplex& a = src.c(m);
      const XComplex& b = src.d(m);
      if (a.is_zero() && b.is_zero()) continue;
      const int k = l - m, ak = std::abs(k);
      const bool band = l > 0 ? m >= l : (l < 0 ? m <= l : true);
      c += a * iv[ak] * s.e(k);
      if (band) {
        dp += a * pv[ak] * s.e(k);
        dw += b * (bin[std::abs(m)][std::abs(l)] * xp[ak]) * s.e(k);
      } else {
        dp += a * iv[ak] * s.e(k);
      }
    }
    out.c(l) = c;
    out.d(l) = dp * local_prefactor(l) + dw;
  }
  return out;
}

}  // namespace mbh
