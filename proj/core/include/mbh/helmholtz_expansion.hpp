#pragma once

#include <span>
#include <vector>

#include "mbh/errors.hpp"
#include "mbh/field.hpp"
#include "mbh/greens.hpp"
#include "mbh/xreal.hpp"

namespace mbh {

// Outgoing: sum_l a_l K_l(lambda rho) e^{i l theta}, valid outside the source disk.
// Local: sum_l a_l I_l(lambda rho) e^{i l theta}, valid inside its disk.
// (rho, theta) are polar coordinates about center; the field is the real part.
enum class MhKind { Outgoing, Local };

struct MhExpansion {
  MhKind kind = MhKind::Outgoing;
  Vec2 center{};
  double lambda = 1.0;
  double radius = 0.0;  // source disk (outgoing) or validity disk (local), 0 if unknown
  int order = 0;
  std::vector<XComplex> coeffs;  // a_l at index l + order

  const XComplex& at(int l) const { return coeffs[static_cast<std::size_t>(l + order)]; }
  XComplex& at(int l) { return coeffs[static_cast<std::size_t>(l + order)]; }
};

MhExpansion mh_zero(MhKind kind, const Vec2& center, double lambda, int p);

// Outgoing expansion of sum_j [c_j k + d_j d_{v1} k + q_j d_{v2} d_{v3} k], k = K_0(lambda |x - s_j|),
// derivatives in s_j.
MhExpansion mh_source_to_multipole(std::span<const PointSource> sources, const Vec2& center, double lambda,
                                   int p, double radius);

MhExpansion mh_m2m(const MhExpansion& src, const Vec2& new_center);
MhExpansion mh_m2l(const MhExpansion& src, const Vec2& new_center, Diagnostics* diag = nullptr);
MhExpansion mh_l2l(const MhExpansion& src, const Vec2& new_center);

FieldSample mh_eval(const MhExpansion& e, const Vec2& x, Diagnostics* diag = nullptr);

FieldSample mh_direct(std::span<const PointSource> sources, double lambda, const Vec2& x);

}  // namespace mbh
