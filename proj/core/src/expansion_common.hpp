#pragma once

// Helpers shared by the expansion modules.

#include <complex>
#include <cmath>
#include <cstdlib>
#include <span>
#include <vector>

#include "mbh/errors.hpp"
#include "mbh/field.hpp"
#include "mbh/greens.hpp"
#include "mbh/xreal.hpp"

namespace mbh::detail {

// e^{-i k theta}
inline std::complex<double> shift_phase(int k, double theta) {
  return std::polar(1.0, -static_cast<double>(k) * theta);
}

inline XReal pow2_neg(int k) { return XReal::from_parts(0.5, 1 - k); }

// (-1)^m
inline double alt_sign(int m) { return (std::abs(m) % 2 == 0) ? 1.0 : -1.0; }

// A jet known only at rho = 0: (f, f', f'').
inline ScaledJet origin_jet(double v, double d1, double d2) {
  return ScaledJet::from(XReal(v), XReal(d1), XReal(d2));
}

// w_c F + w_d d_{v1} F + w_q d_{v2} d_{v3} F for F(s) = f(|s|) e^{i m theta_s},
// differentiated in the source coordinate s.
inline XComplex weighted_source_term(const PointSource& s, double wc, double wd, double wq,
                                     const ScaledJet& f, int m, const Polar& p) {
  const ComplexField cf = p.rho == 0.0 ? angular_mode_field_at_origin(m, f.v, f.d1, f.d2)
                                       : angular_mode_field(m, f.v, f.d1, f.d2, p);
  std::complex<double> r = wc * cf.value;
  if (wd != 0.0) r += wd * directional(cf, s.dipole_dir);
  if (wq != 0.0) r += wq * directional2(cf, s.quad_dirs[0], s.quad_dirs[1]);
  return XComplex::from_parts(r, f.exp);
}

// (c1 f1 + c2 f2) e^{i l theta} added into total.
inline void add_mode(ComplexField& total, int l, const XComplex& c1, const ScaledJet& f1,
                     const XComplex& c2, const ScaledJet& f2, const Polar& p) {
  const XComplex v = c1 * f1.value() + c2 * f2.value();
  const XComplex d1 = c1 * f1.deriv1() + c2 * f2.deriv1();
  const XComplex d2 = c1 * f1.deriv2() + c2 * f2.deriv2();
  if (v.is_zero() && d1.is_zero() && d2.is_zero()) return;
  if (p.rho == 0.0) {
    total += angular_mode_field_at_origin(l, v.to_complex(), d1.to_complex(), d2.to_complex());
  } else {
    total += angular_mode_field(l, v.to_complex(), d1.to_complex(), d2.to_complex(), p);
  }
}

inline void check_order(int p) {
  if (p < 0) throw InvalidArgument("expansion order must be >= 0");
  if (p > 1000) throw InvalidArgument("expansion order too large");
}

inline void check_lambda_positive(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");
}

// Throws unless every source is valid and lies within radius of center.
inline void check_sources_within(std::span<const PointSource> sources, const Vec2& center, double radius) {
  for (const PointSource& s : sources) {
    validate_source(s);
    const double d = std::hypot(s.location[0] - center[0], s.location[1] - center[1]);
    if (d > radius * (1.0 + 1e-12)) throw InvalidArgument("source lies outside the expansion radius");
  }
}

}  // namespace mbh::detail
