#include "mbh/small_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mbh/errors.hpp"

namespace mbh {

Vec2 solve2(const TwoByTwo& a, const Vec2& b, bool* perturbed) {
  double m[2][2] = {{a.a11, a.a12}, {a.a21, a.a22}};
  double rhs[2] = {b[0], b[1]};
  int pr = 0, pc = 0;
  double best = -1.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (std::fabs(m[i][j]) > best) {
        best = std::fabs(m[i][j]);
        pr = i;
        pc = j;
      }
    }
  }
  if (best == 0.0) throw SingularMatrix("solve2: zero matrix");
  const int qr = 1 - pr, qc = 1 - pc;
  const double l = m[qr][pc] / m[pr][pc];
  double u22 = m[qr][qc] - l * m[pr][qc];
  // Rounding level of the subtraction that produced u22.
  const double smin =
      std::max(std::numeric_limits<double>::epsilon() *
                   std::max(std::fabs(m[qr][qc]), std::fabs(l * m[pr][qc])),
               std::numeric_limits<double>::min());
  if (perturbed != nullptr) *perturbed = false;
  if (std::fabs(u22) < smin) {
    u22 = u22 < 0.0 ? -smin : smin;
    if (perturbed != nullptr) *perturbed = true;
  }
  const double y2 = rhs[qr] - l * rhs[pr];
  Vec2 x{};
  x[qc] = y2 / u22;
  x[pc] = (rhs[pr] - m[pr][qc] * x[qc]) / m[pr][pc];
  return x;
}

double det2(const TwoByTwo& a) {
  const double w = a.a12 * a.a21;
  const double e = std::fma(-a.a12, a.a21, w);
  const double f = std::fma(a.a11, a.a22, -w);
  return f + e;
}

SingularValues singular_values(const TwoByTwo& a) {
  const double s1 = std::hypot(a.a11 + a.a22, a.a21 - a.a12);
  const double s2 = std::hypot(a.a11 - a.a22, a.a21 + a.a12);
  const double smax = 0.5 * (s1 + s2);
  const double smin = smax == 0.0 ? 0.0 : std::fabs(det2(a)) / smax;
  return {smax, smin};
}

double cond2(const TwoByTwo& a) {
  const SingularValues s = singular_values(a);
  if (s.min == 0.0) return INFINITY;
  return s.max / s.min;
}

TwoByTwo normalize_columns(const TwoByTwo& a) {
  const double n1 = std::hypot(a.a11, a.a21);
  const double n2 = std::hypot(a.a12, a.a22);
  if (n1 == 0.0 || n2 == 0.0) throw InvalidArgument("cond2_normalized: zero column");
  return {a.a11 / n1, a.a12 / n2, a.a21 / n1, a.a22 / n2};
}

double cond2_normalized(const TwoByTwo& a) {
  return cond2_normalized(a, det2(a));
}

double cond2_normalized(const TwoByTwo& a, double det) {
  if (!std::isfinite(a.a11) || !std::isfinite(a.a12) || !std::isfinite(a.a21) ||
      !std::isfinite(a.a22)) {
    throw InvalidArgument("cond2_normalized: non-finite entry");
  }
  const double n1 = std::hypot(a.a11, a.a21);
  const double n2 = std::hypot(a.a12, a.a22);
  if (n1 == 0.0 || n2 == 0.0) throw InvalidArgument("cond2_normalized: zero column");
  const TwoByTwo u = normalize_columns(a);
  const double c = std::fabs(u.a11 * u.a12 + u.a21 * u.a22);
  const double d = std::fabs(det / n1 / n2);
  if (d == 0.0) throw InfiniteCondition("cond2_normalized: columns are parallel");
  return (1.0 + std::fmin(c, 1.0)) / d;
}

}  // namespace mbh
