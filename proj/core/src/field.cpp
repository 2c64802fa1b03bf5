#include "mbh/field.hpp"

#include <cmath>
#include <cstdlib>

namespace mbh {

FieldSample& FieldSample::operator+=(const FieldSample& o) {
  value += o.value;
  for (int i = 0; i < 2; ++i) gradient[i] += o.gradient[i];
  for (int i = 0; i < 3; ++i) hessian[i] += o.hessian[i];
  return *this;
}

FieldSample& FieldSample::operator-=(const FieldSample& o) {
  value -= o.value;
  for (int i = 0; i < 2; ++i) gradient[i] -= o.gradient[i];
  for (int i = 0; i < 3; ++i) hessian[i] -= o.hessian[i];
  return *this;
}

FieldSample& FieldSample::operator*=(double s) {
  value *= s;
  for (double& g : gradient) g *= s;
  for (double& h : hessian) h *= s;
  return *this;
}

FieldSample operator+(FieldSample a, const FieldSample& b) { return a += b; }
FieldSample operator-(FieldSample a, const FieldSample& b) { return a -= b; }
FieldSample operator*(double s, FieldSample a) { return a *= s; }

ComplexField& ComplexField::operator+=(const ComplexField& o) {
  value += o.value;
  for (int i = 0; i < 2; ++i) gradient[i] += o.gradient[i];
  for (int i = 0; i < 3; ++i) hessian[i] += o.hessian[i];
  return *this;
}

ComplexField& ComplexField::operator*=(std::complex<double> s) {
  value *= s;
  for (auto& g : gradient) g *= s;
  for (auto& h : hessian) h *= s;
  return *this;
}

FieldSample ComplexField::real() const {
  FieldSample f;
  f.value = value.real();
  f.gradient = {gradient[0].real(), gradient[1].real()};
  f.hessian = {hessian[0].real(), hessian[1].real(), hessian[2].real()};
  return f;
}

Polar to_polar(const Vec2& x) { return {std::hypot(x[0], x[1]), std::atan2(x[1], x[0])}; }

ComplexField angular_mode_field(int m, std::complex<double> f, std::complex<double> fp,
                                std::complex<double> fpp, const Polar& p) {
  using C = std::complex<double>;
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  const C e = std::polar(1.0, m * p.theta);
  const double md = m;
  const C ur = fp * e;
  const C ut = C(0.0, md) * f * e;
  const C urr = fpp * e;
  const C urt = C(0.0, md) * fp * e;
  const C utt = -(md * md) * f * e;
  const double ir = 1.0 / p.rho;
  const C a = ur * ir + utt * ir * ir;
  const C b = urt * ir - ut * ir * ir;

  ComplexField out;
  out.value = f * e;
  out.gradient = {c * ur - s * ir * ut, s * ur + c * ir * ut};
  out.hessian = {c * c * urr + s * s * a - 2.0 * s * c * b,
                 s * c * (urr - a) + (c * c - s * s) * b,
                 s * s * urr + c * c * a + 2.0 * s * c * b};
  return out;
}

ComplexField angular_mode_field_at_origin(int m, std::complex<double> f, std::complex<double> fp,
                                          std::complex<double> fpp) {
  using C = std::complex<double>;
  ComplexField out;
  const double sg = m < 0 ? -1.0 : 1.0;
  switch (std::abs(m)) {
    case 0:
      out.value = f;
      out.hessian = {fpp, C(0.0), fpp};
      break;
    case 1:
      out.gradient = {fp, C(0.0, sg) * fp};
      break;
    case 2:
      out.hessian = {fpp, C(0.0, sg) * fpp, -fpp};
      break;
    default:
      break;
  }
  return out;
}

std::complex<double> directional(const ComplexField& f, const Vec2& v) {
  return v[0] * f.gradient[0] + v[1] * f.gradient[1];
}

std::complex<double> directional2(const ComplexField& f, const Vec2& v, const Vec2& w) {
  return v[0] * w[0] * f.hessian[0] + (v[0] * w[1] + v[1] * w[0]) * f.hessian[1] +
         v[1] * w[1] * f.hessian[2];
}

}  // namespace mbh
