#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mbh/errors.hpp"
#include "mbh/field.hpp"
#include "mbh/greens.hpp"

namespace mbh {

// phi(z) = a_0 log(z - center) + sum_{l=1..p} a_l / (z - center)^l, field Re phi.
// coeffs[0] is the log coefficient a_0.
struct LaplaceMultipole {
  std::complex<double> center;
  double radius = 0.0;  // radius of the source disk, 0 if unknown
  std::vector<std::complex<double>> coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

// phi(z) = sum_{l=0..p} b_l (z - center)^l, field Re phi.
struct LaplaceLocal {
  std::complex<double> center;
  double radius = 0.0;  // radius of validity, 0 if unknown
  std::vector<std::complex<double>> coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Expansion of sum_j [c_j log|x - s_j| + d_j d_{v1} log|x - s_j| + q_j d_{v2} d_{v3} log|x - s_j|],
// derivatives in s_j, for sources within radius of center.
LaplaceMultipole laplace_source_to_multipole(std::span<const PointSource> sources, std::complex<double> center,
                                             int p, double radius);

LaplaceMultipole laplace_m2m(const LaplaceMultipole& src, std::complex<double> new_center);
// Warns when |z_0| <= 2R.
LaplaceLocal laplace_m2l(const LaplaceMultipole& src, std::complex<double> new_center,
                         Diagnostics* diag = nullptr);
// Exact.
LaplaceLocal laplace_l2l(const LaplaceLocal& src, std::complex<double> new_center);

std::complex<double> laplace_potential(const LaplaceMultipole& m, std::complex<double> z);
std::complex<double> laplace_potential(const LaplaceLocal& l, std::complex<double> z);

FieldSample laplace_eval(const LaplaceMultipole& m, const Vec2& x, Diagnostics* diag = nullptr);
FieldSample laplace_eval(const LaplaceLocal& l, const Vec2& x, Diagnostics* diag = nullptr);

// Direct sum of the same source field.
FieldSample laplace_direct(std::span<const PointSource> sources, const Vec2& x);

}  // namespace mbh
