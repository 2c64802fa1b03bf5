#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mbh/small_matrix.hpp"
#include "mbh/xreal.hpp"

namespace mbh {

enum class Side { Interior, Exterior };

// Per-mode pairs (F_n, G_n) of radial solutions.
//   IntNaive   (r^|n|, I_n)      n = 0: (1, I_0)
//   IntStable  (r^|n|, P_n)      n = 0: (1, P_0)
//   ExtNaive   (r^-|n|, K_n)     n = 0: (log r, K_0)
//   ExtStable  (Q_n, K_n)
enum class BasisTag { IntNaive, IntStable, ExtNaive, ExtStable };

Side side_of(BasisTag tag);
std::string_view to_string(BasisTag tag);
std::string_view to_string(Side side);
// Accepts INT_NAIVE / int-naive / int_naive style spellings.
BasisTag parse_basis(std::string_view name);
Side parse_side(std::string_view name);

enum class RadialKind { One, Power, InversePower, Log, BesselI, StableP, BesselK, StableQ };

std::pair<RadialKind, RadialKind> basis_pair(BasisTag tag, int n);

// f(r), f'(r), f''(r) for the radial function of the given kind and |n|.
ScaledJet radial_jet(RadialKind kind, int n, double lambda, double r);

// P_n(r) = I_n(lambda r) - (lambda r/2)^|n|/|n|!
ScaledJet p_jet(int n, double lambda, double r);
// Q_n(r) = K_n(lambda r) - 2^{|n|-1}(|n|-1)!/(lambda r)^|n|,  Q_0 = K_0(lambda r) + log r
ScaledJet q_jet(int n, double lambda, double r);

struct ValueDeriv {
  double value = 0.0;
  double deriv = 0.0;
};

ValueDeriv p_eval(int n, double lambda, double r);
ValueDeriv q_eval(int n, double lambda, double r);

// Argument below which the P_n / Q_n series branches are used.  Equal to 2
// for the low orders; grows like 2 sqrt(|n|) so that direct subtraction above
// it never cancels more than a factor of about 4.
double p_series_switch(int n);
double q_series_switch(int n);

// The matrix [[F(R), G(R)], [F'(R), G'(R)]].
struct ModeMatrix {
  BasisTag basis = BasisTag::IntStable;
  int n = 0;
  double lambda = 0.0;
  double radius = 0.0;
  std::array<XReal, 4> entries{};  // row-major
  // Determinant evaluated without cancellation: for the naive pairs it is
  // taken from the stabilised companion column (G minus a multiple of F),
  // which leaves the determinant unchanged.
  XReal det;

  // Entries as doubles; throws OverflowError when they do not fit.
  TwoByTwo to_matrix() const;

  // Column j multiplied by 2^-col_exp[j] so that its largest entry lies in
  // [0.5, 1).  Power-of-two scaling leaves the pivoting and rounding intact.
  struct Scaled {
    TwoByTwo matrix;
    std::array<std::int64_t, 2> col_exp{};
  };
  Scaled scaled() const;

  double normalized_condition() const;
};

ModeMatrix mode_matrix(BasisTag basis, int n, double lambda, double radius);

double cond2_normalized(const ModeMatrix& m);

// Radial pair jets for n = 0..n_max at one radius, sharing the Bessel
// sequence work across orders.
std::vector<std::pair<ScaledJet, ScaledJet>> radial_pairs(BasisTag basis, int n_max, double lambda,
                                                           double r);

}  // namespace mbh
