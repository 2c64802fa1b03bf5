#include "mbh/laplace_expansion.hpp"

#include <cmath>
#include <string>

#include "expansion_common.hpp"

namespace mbh {

namespace {

using C = std::complex<double>;

// Pascal's triangle up to row n.
std::vector<std::vector<double>> binomials(int n) {
  std::vector<std::vector<double>> t(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    t[i].assign(static_cast<std::size_t>(i) + 1, 1.0);
    for (int k = 1; k < i; ++k) t[i][k] = t[i - 1][k - 1] + t[i - 1][k];
  }
  return t;
}

C as_complex(const Vec2& v) { return {v[0], v[1]}; }

// Re phi with its x-derivatives, phi analytic.
FieldSample analytic_field(C phi, C d1, C d2) {
  FieldSample f;
  f.value = phi.real();
  f.gradient = {d1.real(), -d1.imag()};
  f.hessian = {d2.real(), -d2.imag(), -d2.real()};
  return f;
}

}  // namespace

LaplaceMultipole laplace_source_to_multipole(std::span<const PointSource> sources, C center, int p,
                                             double radius) {
  detail::check_order(p);
  detail::check_sources_within(sources, {center.real(), center.imag()}, radius);
  LaplaceMultipole m;
  m.center = center;
  m.radius = radius;
  m.coeffs.assign(static_cast<std::size_t>(p) + 1, C{});
  for (const PointSource& s : sources) {
    const C sp = as_complex(s.location) - center;
    const C v1 = as_complex(s.dipole_dir);
    const C vq = as_complex(s.quad_dirs[0]) * as_complex(s.quad_dirs[1]);
    m.coeffs[0] += s.charge;
    // powers sp^{l-2}, sp^{l-1}, sp^l
    C pm2 = 0.0, pm1 = 1.0, pl = sp;
    for (int l = 1; l <= p; ++l) {
      m.coeffs[l] += -s.charge * pl / static_cast<double>(l) - s.dipole_weight * v1 * pm1 -
                     s.quad_weight * static_cast<double>(l - 1) * vq * pm2;
      pm2 = l == 1 ? C(1.0) : pm2 * sp;
      pm1 *= sp;
      pl *= sp;
    }
  }
  return m;
}

LaplaceMultipole laplace_m2m(const LaplaceMultipole& src, C new_center) {
  const int p = src.order();
  if (p < 1) throw InvalidArgument("laplace_m2m: order must be >= 1");
  const C z0 = src.center - new_center;
  const auto bin = binomials(p);
  LaplaceMultipole out;
  out.center = new_center;
  out.radius = src.radius > 0.0 ? src.radius + std::abs(z0) : 0.0;
  out.coeffs.assign(src.coeffs.size(), C{});
  out.coeffs[0] = src.coeffs[0];
  std::vector<C> zp(static_cast<std::size_t>(p) + 1, 1.0);
  for (int k = 1; k <= p; ++k) zp[k] = zp[k - 1] * z0;
  for (int l = 1; l <= p; ++l) {
    C b = -src.coeffs[0] * zp[l] / static_cast<double>(l);
    for (int m = 1; m <= l; ++m) b += src.coeffs[m] * zp[l - m] * bin[l - 1][m - 1];
    out.coeffs[l] = b;
  }
  return out;
}

LaplaceLocal laplace_m2l(const LaplaceMultipole& src, C new_center, Diagnostics* diag) {
  const int p = src.order();
  if (p < 1) throw InvalidArgument("laplace_m2l: order must be >= 1");
  const C z0 = src.center - new_center;
  const double d = std::abs(z0);
  if (d == 0.0) throw InvalidArgument("laplace_m2l: centers coincide");
  if (src.radius > 0.0 && d <= 2.0 * src.radius) {
    warn(diag, "laplace_m2l: separation " + std::to_string(d) + " is not above 2R");
  }
  const auto bin = binomials(2 * p);
  // t_m = a_m (-1)^m / z0^m
  std::vector<C> t(static_cast<std::size_t>(p) + 1, C{});
  C inv = 1.0 / z0, ip = 1.0;
  for (int m = 1; m <= p; ++m) {
    ip *= inv;
    t[m] = src.coeffs[m] * ip * detail::alt_sign(m);
  }
  LaplaceLocal out;
  out.center = new_center;
  out.radius = src.radius > 0.0 ? d - src.radius : 0.0;
  out.coeffs.assign(static_cast<std::size_t>(p) + 1, C{});
  C b0 = src.coeffs[0] * std::log(-z0);
  for (int m = 1; m <= p; ++m) b0 += t[m];
  out.coeffs[0] = b0;
  C il = 1.0;
  for (int l = 1; l <= p; ++l) {
    il *= inv;
    C s = 0.0;
    for (int m = 1; m <= p; ++m) s += t[m] * bin[l + m - 1][m - 1];
    out.coeffs[l] = il * s - src.coeffs[0] * il / static_cast<double>(l);
  }
  return out;
}

LaplaceLocal laplace_l2l(const LaplaceLocal& src, C new_center) {
  const int p = src.order();
  if (p < 0) throw InvalidArgument("laplace_l2l: empty expansion");
  const C z0 = src.center - new_center;
  const auto bin = binomials(p);
  std::vector<C> mz(static_cast<std::size_t>(p) + 1, 1.0);
  for (int k = 1; k <= p; ++k) mz[k] = mz[k - 1] * (-z0);
  LaplaceLocal out;
  out.center = new_center;
  out.radius = src.radius > 0.0 ? std::max(0.0, src.radius - std::abs(z0)) : 0.0;
  out.coeffs.assign(src.coeffs.size(), C{});
  for (int m = 0; m <= p; ++m) {
    C s = 0.0;
    for (int l = m; l <= p; ++l) s += src.coeffs[l] * bin[l][m] * mz[l - m];
    out.coeffs[m] = s;
  }
  return out;
}

C laplace_potential(const LaplaceMultipole& m, C z) {
  const C w = z - m.center;
  C s = 0.0;
  for (int l = m.order(); l >= 1; --l) s = (s + m.coeffs[l]) / w;
  return m.coeffs[0] * std::log(w) + s;
}

C laplace_potential(const LaplaceLocal& l, C z) {
  const C w = z - l.center;
  C s = 0.0;
  for (int k = l.order(); k >= 0; --k) s = s * w + l.coeffs[k];
  return s;
}

FieldSample laplace_eval(const LaplaceMultipole& m, const Vec2& x, Diagnostics* diag) {
  const C w = as_complex(x) - m.center;
  if (m.radius > 0.0 && std::abs(w) <= m.radius) warn(diag, "laplace_eval: target inside the source disk");
  const C iw = 1.0 / w;
  C v = m.coeffs[0] * std::log(w), d1 = m.coeffs[0] * iw, d2 = -m.coeffs[0] * iw * iw;
  C pw = iw;  // w^{-l}
  for (int l = 1; l <= m.order(); ++l) {
    const double ld = l;
    v += m.coeffs[l] * pw;
    d1 -= ld * m.coeffs[l] * pw * iw;
    d2 += ld * (ld + 1.0) * m.coeffs[l] * pw * iw * iw;
    pw *= iw;
  }
  return analytic_field(v, d1, d2);
}

FieldSample laplace_eval(const LaplaceLocal& l, const Vec2& x, Diagnostics* diag) {
  const C w = as_complex(x) - l.center;
  if (l.radius > 0.0 && std::abs(w) > l.radius) warn(diag, "laplace_eval: target outside the local disk");
  C v = 0.0, d1 = 0.0, d2 = 0.0;
  for (int k = l.order(); k >= 0; --k) {
    d2 = d2 * w + 2.0 * d1;
    d1 = d1 * w + v;
    v = v * w + l.coeffs[k];
  }
  return analytic_field(v, d1, d2);
}

FieldSample laplace_direct(std::span<const PointSource> sources, const Vec2& x) {
  C v = 0.0, d1 = 0.0, d2 = 0.0;
  for (const PointSource& s : sources) {
    const C w = as_complex(x) - as_complex(s.location);
    const C iw = 1.0 / w;
    const C a = s.dipole_weight * as_complex(s.dipole_dir);
    const C b = s.quad_weight * as_complex(s.quad_dirs[0]) * as_complex(s.quad_dirs[1]);
    // c log w - a/w - b/w^2
    v += s.charge * std::log(w) - a * iw - b * iw * iw;
    d1 += s.charge * iw + a * iw * iw + 2.0 * b * iw * iw * iw;
    d2 += -s.charge * iw * iw - 2.0 * a * iw * iw * iw - 6.0 * b * iw * iw * iw * iw;
  }
  return analytic_field(v, d1, d2);
}

}  // namespace mbh
