#pragma once

#include <array>
#include <span>
#include <vector>

#include "mbh/field.hpp"

namespace mbh {

// Source of the synthetic field
//   u(x) = lambda^2 c G(x,s) + lambda d d_{v1} G(x,s) + q d_{v2} d_{v3} G(x,s),
// with the directional derivatives taken in the source coordinate s.
struct PointSource {
  Vec2 location{};
  double charge = 0.0;
  double dipole_weight = 0.0;
  Vec2 dipole_dir{1.0, 0.0};
  double quad_weight = 0.0;
  std::array<Vec2, 2> quad_dirs{Vec2{1.0, 0.0}, Vec2{1.0, 0.0}};
};

// g(rho) = -(K_0(lambda rho) + log rho)/(2 pi lambda^2) and its radial
// derivatives through max_order (<= 5).
std::vector<double> greens_radial(double lambda, double rho, int max_order);

FieldSample synth_field(std::span<const PointSource> sources, double lambda, const Vec2& x);

struct SplitField {
  FieldSample laplace_part;    // u_L, log-kernel terms
  FieldSample helmholtz_part;  // u_H, K_0-kernel terms
  // u_H - u_L in working precision.
  FieldSample difference() const { return helmholtz_part - laplace_part; }
};

SplitField split_field(std::span<const PointSource> sources, double lambda, const Vec2& x);

// sum_j [c_j k + d_j d_{v1} k + q_j d_{v2} d_{v3} k] with unit prefactor,
// k = K_0(lambda |x - s_j|) or log |x - s_j|, derivatives in s_j.
FieldSample k0_kernel_field(std::span<const PointSource> sources, double lambda, const Vec2& x);
FieldSample log_kernel_field(std::span<const PointSource> sources, const Vec2& x);

// Throws InvalidArgument if any direction is not a unit vector.
void validate_source(const PointSource& s);

}  // namespace mbh
