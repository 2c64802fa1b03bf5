#pragma once

#include <array>

namespace mbh {

// Row-major 2x2 matrix [[a11, a12], [a21, a22]].
struct TwoByTwo {
  double a11 = 0.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 0.0;
};

using Vec2 = std::array<double, 2>;

// Gaussian elimination with complete pivoting.  Throws SingularMatrix when
// the first pivot is zero.  A second pivot lost entirely to cancellation
// (below eps times the terms it was formed from) is replaced by that bound
// with its sign kept, and *perturbed is set.
Vec2 solve2(const TwoByTwo& a, const Vec2& b, bool* perturbed = nullptr);

// a11*a22 - a12*a21 with one rounding (Kahan's fma scheme).
double det2(const TwoByTwo& a);

struct SingularValues {
  double max = 0.0;
  double min = 0.0;
};

SingularValues singular_values(const TwoByTwo& a);

// sigma_max / sigma_min (inf when singular).
double cond2(const TwoByTwo& a);

// Condition number after scaling each column to unit length.  With c the
// cosine between the columns this is sqrt((1+c)/(1-c)); it is evaluated as
// (1+c)/|det| of the normalised matrix.  Throws InvalidArgument for a zero
// column and InfiniteCondition when the normalised determinant is zero.
double cond2_normalized(const TwoByTwo& a);

// cond2_normalized with the determinant supplied by the caller (used when a
// more accurate determinant than the entries allow is known).
double cond2_normalized(const TwoByTwo& a, double det);

TwoByTwo normalize_columns(const TwoByTwo& a);

}  // namespace mbh
