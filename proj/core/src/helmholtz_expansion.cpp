#include "mbh/helmholtz_expansion.hpp"

#include <cmath>
#include <string>

#include "expansion_common.hpp"
#include "mbh/bessel.hpp"

namespace mbh {

namespace {

void check_kind(const MhExpansion& e, MhKind want, const char* op) {
  if (e.kind != want) throw InvalidArgument(std::string(op) + ": wrong expansion kind");
}

// I_l(lambda r) jets in r for l = 0..p, including r = 0.
std::vector<ScaledJet> i_jets_r(int p, double lambda, double r) {
  std::vector<ScaledJet> out(static_cast<std::size_t>(p) + 1);
  if (r == 0.0) {
    out[0] = detail::origin_jet(1.0, 0.0, 0.5 * lambda * lambda);
    if (p >= 1) out[1] = detail::origin_jet(0.0, 0.5 * lambda, 0.0);
    if (p >= 2) out[2] = detail::origin_jet(0.0, 0.0, 0.25 * lambda * lambda);
    return out;
  }
  const auto j = bessel_i_jets(p, lambda * r);
  for (int l = 0; l <= p; ++l) out[l] = j[l].chain(lambda);
  return out;
}

std::vector<ScaledJet> k_jets_r(int p, double lambda, double r) {
  const auto j = bessel_k_jets(p, lambda * r);
  std::vector<ScaledJet> out(static_cast<std::size_t>(p) + 1);
  for (int l = 0; l <= p; ++l) out[l] = j[l].chain(lambda);
  return out;
}

Polar shift_polar(const Vec2& from, const Vec2& to) { return to_polar({to[0] - from[0], to[1] - from[1]}); }

// b_l = sum_m a_m w_m B_{|l-m|} e^{-i(l-m) theta0}; w_m = (-1)^m when alternate.
std::vector<XComplex> convolve(const MhExpansion& src, const std::vector<XReal>& bessel, double theta0,
                               bool alternate) {
  const int p = src.order;
  std::vector<XComplex> out(src.coeffs.size());
  std::vector<std::complex<double>> ph(static_cast<std::size_t>(4 * p) + 1);
  for (int k = -2 * p; k <= 2 * p; ++k) ph[k + 2 * p] = detail::shift_phase(k, theta0);
  for (int l = -p; l <= p; ++l) {
    XComplex s;
    for (int m = -p; m <= p; ++m) {
      const XComplex& a = src.at(m);
      if (a.is_zero()) continue;
      const int k = l - m;
      XComplex t = a * bessel[std::abs(k)] * ph[k + 2 * p];
      if (alternate) t = t * detail::alt_sign(m);
      s += t;
    }
    out[l + p] = s;
  }
  return out;
}

}  // namespace

MhExpansion mh_zero(MhKind kind, const Vec2& center, double lambda, int p) {
  detail::check_order(p);
  detail::check_lambda_positive(lambda);
  MhExpansion e;
  e.kind = kind;
  e.center = center;
  e.lambda = lambda;
  e.order = p;
  e.coeffs.assign(static_cast<std::size_t>(2 * p + 1), XComplex{});
  return e;
}

MhExpansion mh_source_to_multipole(std::span<const PointSource> sources, const Vec2& center, double lambda,
                                   int p, double radius) {
  MhExpansion e = mh_zero(MhKind::Outgoing, center, lambda, p);
  e.radius = radius;
  detail::check_sources_within(sources, center, radius);
  for (const PointSource& s : sources) {
    const Polar ps = to_polar({s.location[0] - center[0], s.location[1] - center[1]});
    const auto ij = i_jets_r(p, lambda, ps.rho);
    for (int l = -p; l <= p; ++l) {
      e.at(l) += detail::weighted_source_term(s, s.charge, s.dipole_weight, s.quad_weight, ij[std::abs(l)], -l,
                                              ps);
    }
  }
  return e;
}

MhExpansion mh_m2m(const MhExpansion& src, const Vec2& new_center) {
  check_kind(src, MhKind::Outgoing, "mh_m2m");
  const Polar s = shift_polar(new_center, src.center);
  MhExpansion out = src;
  out.center = new_center;
  if (s.rho == 0.0) return out;
  out.radius = src.radius > 0.0 ? src.radius + s.rho : 0.0;
  out.coeffs = convolve(src, bessel_i_seq_x(2 * src.order, src.lambda * s.rho), s.theta, false);
  return out;
}

MhExpansion mh_m2l(const MhExpansion& src, const Vec2& new_center, Diagnostics* diag) {
  check_kind(src, MhKind::Outgoing, "mh_m2l");
  const Polar s = shift_polar(new_center, src.center);
  if (s.rho == 0.0) throw InvalidArgument("mh_m2l: centers coincide");
  if (src.radius > 0.0 && s.rho <= src.radius) warn(diag, "mh_m2l: target center inside the source disk");
  MhExpansion out = src;
  out.kind = MhKind::Local;
  out.center = new_center;
  out.radius = src.radius > 0.0 ? s.rho - src.radius : 0.0;
  out.coeffs = convolve(src, bessel_k_seq_x(2 * src.order, src.lambda * s.rho), s.theta, true);
  return out;
}

MhExpansion mh_l2l(const MhExpansion& src, const Vec2& new_center) {
  check_kind(src, MhKind::Local, "mh_l2l");
  const Polar s = shift_polar(src.center, new_center);
  MhExpansion out = src;
  out.center = new_center;
  if (s.rho == 0.0) return out;
  out.radius = src.radius > 0.0 ? std::max(0.0, src.radius - s.rho) : 0.0;
  out.coeffs = convolve(src, bessel_i_seq_x(2 * src.order, src.lambda * s.rho), s.theta, false);
  return out;
}

FieldSample mh_eval(const MhExpansion& e, const Vec2& x, Diagnostics* diag) {
  const Polar p = to_polar({x[0] - e.center[0], x[1] - e.center[1]});
  std::vector<ScaledJet> jets;
  if (e.kind == MhKind::Outgoing) {
    if (p.rho == 0.0) throw InvalidArgument("mh_eval: outgoing expansion evaluated at its center");
    if (e.radius > 0.0 && p.rho <= e.radius) warn(diag, "mh_eval: target inside the source disk");
    jets = k_jets_r(e.order, e.lambda, p.rho);
  } else {
    if (e.radius > 0.0 && p.rho > e.radius) warn(diag, "mh_eval: target outside the local disk");
    jets = i_jets_r(e.order, e.lambda, p.rho);
  }
  ComplexField total;
  const ScaledJet none{};
  for (int l = -e.order; l <= e.order; ++l) {
    detail::add_mode(total, l, e.at(l), jets[std::abs(l)], XComplex{}, none, p);
  }
  return total.real();
}

FieldSample mh_direct(std::span<const PointSource> sources, double lambda, const Vec2& x) {
  return k0_kernel_field(sources, lambda, x);
}

}  // namespace mbh
