#pragma once

#include <span>
#include <vector>

#include "mbh/errors.hpp"
#include "mbh/field.hpp"
#include "mbh/greens.hpp"
#include "mbh/xreal.hpp"

namespace mbh {

// Multipole sum_l (a_l Q_l(rho) + b_l K_l(lambda rho)) e^{i l theta} about center,
// with Q_l(rho) = K_l(lambda rho) - 2^{|l|-1}(|l|-1)!/(lambda rho)^{|l|} and
// Q_0(rho) = K_0(lambda rho) + log rho.  The field is the real part.
struct MbhMultipole {
  Vec2 center{};
  double lambda = 1.0;
  double radius = 0.0;  // source disk, 0 if unknown
  int order = 0;
  std::vector<XComplex> q_coeffs;  // a_l at index l + order
  std::vector<XComplex> k_coeffs;  // b_l

  const XComplex& a(int l) const { return q_coeffs[static_cast<std::size_t>(l + order)]; }
  const XComplex& b(int l) const { return k_coeffs[static_cast<std::size_t>(l + order)]; }
  XComplex& a(int l) { return q_coeffs[static_cast<std::size_t>(l + order)]; }
  XComplex& b(int l) { return k_coeffs[static_cast<std::size_t>(l + order)]; }
};

// Local sum_l (c_l P_l(rho) + d_l (lambda rho)^{|l|}) e^{i l theta}, with
// P_l(rho) = I_l(lambda rho) - (lambda rho/2)^{|l|}/|l|!.
struct MbhLocal {
  Vec2 center{};
  double lambda = 1.0;
  double radius = 0.0;  // validity disk, 0 if unknown
  int order = 0;
  std::vector<XComplex> p_coeffs;    // c_l at index l + order
  std::vector<XComplex> pow_coeffs;  // d_l

  const XComplex& c(int l) const { return p_coeffs[static_cast<std::size_t>(l + order)]; }
  const XComplex& d(int l) const { return pow_coeffs[static_cast<std::size_t>(l + order)]; }
  XComplex& c(int l) { return p_coeffs[static_cast<std::size_t>(l + order)]; }
  XComplex& d(int l) { return pow_coeffs[static_cast<std::size_t>(l + order)]; }
};

MbhMultipole mbh_zero_multipole(const Vec2& center, double lambda, int p);
MbhLocal mbh_zero_local(const Vec2& center, double lambda, int p);

// Multipole of synth_field(sources, lambda, .) for sources within radius of center.
MbhMultipole mbh_source_to_multipole(std::span<const PointSource> sources, const Vec2& center, double lambda,
                                     int p, double radius);

FieldSample mbh_eval_multipole(const MbhMultipole& e, const Vec2& x, Diagnostics* diag = nullptr);
FieldSample mbh_eval_local(const MbhLocal& e, const Vec2& x, Diagnostics* diag = nullptr);

MbhMultipole mbh_m2m(const MbhMultipole& src, const Vec2& new_center);
MbhLocal mbh_m2l(const MbhMultipole& src, const Vec2& new_center, Diagnostics* diag = nullptr);
MbhLocal mbh_l2l(const MbhLocal& src, const Vec2& new_center);

}  // namespace mbh
