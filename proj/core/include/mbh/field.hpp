#pragma once

#include <array>
#include <complex>

#include "mbh/small_matrix.hpp"

namespace mbh {

// Value, gradient (u_x, u_y) and Hessian (u_xx, u_xy, u_yy) at one point.
struct FieldSample {
  double value = 0.0;
  Vec2 gradient{};
  std::array<double, 3> hessian{};

  FieldSample& operator+=(const FieldSample& o);
  FieldSample& operator-=(const FieldSample& o);
  FieldSample& operator*=(double s);
};

FieldSample operator+(FieldSample a, const FieldSample& b);
FieldSample operator-(FieldSample a, const FieldSample& b);
FieldSample operator*(double s, FieldSample a);

// Complex-valued counterpart, summed over angular modes before taking the
// real part.
struct ComplexField {
  std::complex<double> value{};
  std::array<std::complex<double>, 2> gradient{};
  std::array<std::complex<double>, 3> hessian{};

  ComplexField& operator+=(const ComplexField& o);
  ComplexField& operator*=(std::complex<double> s);
  FieldSample real() const;
};

struct Polar {
  double rho = 0.0;
  double theta = 0.0;
};

Polar to_polar(const Vec2& x);

// Value, gradient and Hessian of f(rho) e^{i m theta} from f, f', f''.
ComplexField angular_mode_field(int m, std::complex<double> f, std::complex<double> fp,
                                std::complex<double> fpp, const Polar& p);

// The same at rho = 0 for a function regular at the origin; only |m| <= 2
// contributes.  f, f', f'' are the radial values at zero.
ComplexField angular_mode_field_at_origin(int m, std::complex<double> f, std::complex<double> fp,
                                          std::complex<double> fpp);

// Directional derivatives of a field along fixed unit vectors.
std::complex<double> directional(const ComplexField& f, const Vec2& v);
std::complex<double> directional2(const ComplexField& f, const Vec2& v, const Vec2& w);

}  // namespace mbh
