#include "mbh/greens.hpp"

#include <cmath>
#include <numbers>

#include "mbh/bessel.hpp"
#include "mbh/errors.hpp"
#include "mbh/stable_basis.hpp"

namespace mbh {

namespace {

constexpr int kOrders = 5;
using Radial = std::array<double, kOrders + 1>;

// F_k = ((1/r) d/dr)^k applied to a radial kernel, k = 0..kmax.

// Kernel K_0(lambda r) + log r: F_k = (-lambda/r)^k Q_k(r).
Radial full_kernel(double lambda, double r, int kmax) {
  Radial f{};
  const double x = lambda * r;
  std::vector<XReal> kseq;
  for (int k = 0; k <= kmax; ++k) {
    double q = 0.0;
    if (x < q_series_switch(k)) {
      q = q_jet(k, lambda, r).value().to_double();
    } else {
      if (kseq.empty()) kseq = bessel_k_seq_x(kmax, x);
      if (k == 0) {
        q = kseq[0].to_double() + std::log(r);
      } else {
        const XReal lead = XReal::from_parts(1.0, k - 1) * factorial_x(k - 1) * pow(XReal(x), -k);
        q = (kseq[k] - lead).to_double();
      }
    }
    f[k] = k == 0 ? q : std::pow(-lambda / r, k) * q;
  }
  return f;
}

// Kernel log r.
Radial log_kernel(double r, int kmax) {
  Radial f{};
  f[0] = std::log(r);
  double fact = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    if (k > 1) fact *= (k - 1);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    f[k] = sign * std::ldexp(fact, k - 1) * std::pow(r, -2 * k);
  }
  return f;
}

// Kernel K_0(lambda r): F_k = (-lambda/r)^k K_k(lambda r).
Radial bessel_kernel(double lambda, double r, int kmax) {
  Radial f{};
  const auto k = bessel_k_seq_x(kmax, lambda * r);
  for (int j = 0; j <= kmax; ++j) f[j] = std::pow(-lambda / r, j) * k[j].to_double();
  return f;
}

double d(int i, int j) { return i == j ? 1.0 : 0.0; }

// Cartesian derivative tensors of a radial function at offset y.
struct Tensors {
  const Radial& f;
  const Vec2& y;
  double t1(int i) const { return y[i] * f[1]; }
  double t2(int i, int j) const { return d(i, j) * f[1] + y[i] * y[j] * f[2]; }
  double t3(int i, int j, int k) const {
    return (d(i, j) * y[k] + d(i, k) * y[j] + d(j, k) * y[i]) * f[2] + y[i] * y[j] * y[k] * f[3];
  }
  double t4(int i, int j, int k, int l) const {
    const double dd = d(i, j) * d(k, l) + d(i, k) * d(j, l) + d(i, l) * d(j, k);
    const double dyy = d(i, j) * y[k] * y[l] + d(i, k) * y[j] * y[l] + d(i, l) * y[j] * y[k] +
                       d(j, k) * y[i] * y[l] + d(j, l) * y[i] * y[k] + d(k, l) * y[i] * y[j];
    return dd * f[2] + dyy * f[3] + y[i] * y[j] * y[k] * y[l] * f[4];
  }
};

// scale * [c k - d v1.grad k + q v2^T (grad grad k) v3] with target derivatives;
// the minus signs come from differentiating in the source coordinate.
FieldSample assemble(const Radial& f, const Vec2& y, const PointSource& s, double cw, double dw,
                     double qw, double scale) {
  const Tensors t{f, y};
  const Vec2& v1 = s.dipole_dir;
  const Vec2& v2 = s.quad_dirs[0];
  const Vec2& v3 = s.quad_dirs[1];
  FieldSample out;
  double dv = 0.0, qv = 0.0;
  for (int i = 0; i < 2; ++i) {
    dv += v1[i] * t.t1(i);
    for (int j = 0; j < 2; ++j) qv += v2[i] * v3[j] * t.t2(i, j);
  }
  out.value = cw * f[0] - dw * dv + qw * qv;
  for (int a = 0; a < 2; ++a) {
    double dg = 0.0, qg = 0.0;
    for (int i = 0; i < 2; ++i) {
      dg += v1[i] * t.t2(i, a);
      for (int j = 0; j < 2; ++j) qg += v2[i] * v3[j] * t.t3(i, j, a);
    }
    out.gradient[a] = cw * t.t1(a) - dw * dg + qw * qg;
  }
  const int ab[3][2] = {{0, 0}, {0, 1}, {1, 1}};
  for (int h = 0; h < 3; ++h) {
    const int a = ab[h][0], b = ab[h][1];
    double dh = 0.0, qh = 0.0;
    for (int i = 0; i < 2; ++i) {
      dh += v1[i] * t.t3(i, a, b);
      for (int j = 0; j < 2; ++j) qh += v2[i] * v3[j] * t.t4(i, j, a, b);
    }
    out.hessian[h] = cw * t.t2(a, b) - dw * dh + qw * qh;
  }
  out *= scale;
  return out;
}

Vec2 offset(const PointSource& s, const Vec2& x, double& r) {
  const Vec2 y{x[0] - s.location[0], x[1] - s.location[1]};
  r = std::hypot(y[0], y[1]);
  if (!(r > 1e-300)) throw InvalidArgument("evaluation point coincides with a source");
  return y;
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");
}

}  // namespace

void validate_source(const PointSource& s) {
  auto unit = [](const Vec2& v) { return std::fabs(std::hypot(v[0], v[1]) - 1.0) <= 1e-14; };
  if (!unit(s.dipole_dir) || !unit(s.quad_dirs[0]) || !unit(s.quad_dirs[1])) {
    throw InvalidArgument("source directions must be unit vectors");
  }
}

std::vector<double> greens_radial(double lambda, double rho, int max_order) {
  check_lambda(lambda);
  if (!(rho > 0.0)) throw InvalidArgument("greens_radial: rho must be > 0");
  if (max_order < 0 || max_order > kOrders) throw InvalidArgument("greens_radial: max_order must be in [0, 5]");
  const Radial f = full_kernel(lambda, rho, max_order);
  const double r = rho, r2 = r * r;
  std::array<double, kOrders + 1> h{};
  h[0] = f[0];
  if (max_order >= 1) h[1] = r * f[1];
  if (max_order >= 2) h[2] = f[1] + r2 * f[2];
  if (max_order >= 3) h[3] = 3.0 * r * f[2] + r2 * r * f[3];
  if (max_order >= 4) h[4] = 3.0 * f[2] + 6.0 * r2 * f[3] + r2 * r2 * f[4];
  if (max_order >= 5) h[5] = 15.0 * r * f[3] + 10.0 * r2 * r * f[4] + r2 * r2 * r * f[5];
  const double scale = -1.0 / (2.0 * std::numbers::pi * lambda * lambda);
  std::vector<double> g(static_cast<std::size_t>(max_order) + 1);
  for (int k = 0; k <= max_order; ++k) g[k] = scale * h[k];
  return g;
}

FieldSample synth_field(std::span<const PointSource> sources, double lambda, const Vec2& x) {
  check_lambda(lambda);
  FieldSample out;
  const double scale = -1.0 / (2.0 * std::numbers::pi);
  for (const PointSource& s : sources) {
    double r = 0.0;
    const Vec2 y = offset(s, x, r);
    const bool needs4 = s.quad_weight != 0.0;
    const bool needs3 = needs4 || s.dipole_weight != 0.0;
    const Radial f = full_kernel(lambda, r, needs4 ? 4 : (needs3 ? 3 : 2));
    out += assemble(f, y, s, s.charge, s.dipole_weight / lambda, s.quad_weight / (lambda * lambda), scale);
  }
  return out;
}

SplitField split_field(std::span<const PointSource> sources, double lambda, const Vec2& x) {
  check_lambda(lambda);
  SplitField out;
  const double scale = 1.0 / (2.0 * std::numbers::pi);
  for (const PointSource& s : sources) {
    double r = 0.0;
    const Vec2 y = offset(s, x, r);
    const double cw = s.charge, dw = s.dipole_weight / lambda, qw = s.quad_weight / (lambda * lambda);
    out.laplace_part += assemble(log_kernel(r, 4), y, s, cw, dw, qw, scale);
    out.helmholtz_part += assemble(bessel_kernel(lambda, r, 4), y, s, cw, dw, qw, -scale);
  }
  return out;
}

FieldSample k0_kernel_field(std::span<const PointSource> sources, double lambda, const Vec2& x) {
  check_lambda(lambda);
  FieldSample out;
  for (const PointSource& s : sources) {
    double r = 0.0;
    const Vec2 y = offset(s, x, r);
    out += assemble(bessel_kernel(lambda, r, 4), y, s, s.charge, s.dipole_weight, s.quad_weight, 1.0);
  }
  return out;
}

FieldSample log_kernel_field(std::span<const PointSource> sources, const Vec2& x) {
  FieldSample out;
  for (const PointSource& s : sources) {
    double r = 0.0;
    const Vec2 y = offset(s, x, r);
    out += assemble(log_kernel(r, 4), y, s, s.charge, s.dipole_weight, s.quad_weight, 1.0);
  }
  return out;
}

}  // namespace mbh
