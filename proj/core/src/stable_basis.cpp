#include "mbh/stable_basis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "mbh/bessel.hpp"
#include "mbh/errors.hpp"

namespace mbh {

namespace {

constexpr double kMaxArgument = 700.0;

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive and finite");
}

void check_argument(double x) {
  if (x > kMaxArgument) throw OverflowError("lambda*r beyond the supported range");
}

// (x/2)^n/n! and its x-derivatives.
ScaledJet p_lead(int n, double x) {
  const XReal l = pow(XReal(0.5 * x), n) / factorial_x(n);
  const XReal d1 = n == 0 ? XReal(0.0) : l * XReal(n / x);
  const XReal d2 = n < 2 ? XReal(0.0) : l * XReal(n * (n - 1.0) / (x * x));
  return ScaledJet::from(l, d1, d2);
}

// 2^{n-1}(n-1)!/x^n and its x-derivatives, n >= 1.
ScaledJet q_lead(int n, double x) {
  const XReal l = XReal::from_parts(1.0, n - 1) * factorial_x(n - 1) * pow(XReal(x), -n);
  return ScaledJet::from(l, -(l * XReal(n / x)), l * XReal(n * (n + 1.0) / (x * x)));
}

ScaledJet p_from(const ScaledJet& ijet, int n, double x, double lambda) {
  if (x < p_series_switch(n)) return bessel_i_series_jet(n, x, true).chain(lambda);
  return (ijet - p_lead(n, x)).chain(lambda);
}

ScaledJet q_from(const ScaledJet& kjet, int n, double x, double lambda) {
  ScaledJet j;
  if (x < q_series_switch(n)) {
    j = bessel_k_series_jet(n, x, true);
  } else if (n == 0) {
    j = kjet + ScaledJet::from(XReal(std::log(x)), XReal(1.0 / x), XReal(-1.0 / (x * x)));
  } else {
    j = kjet - q_lead(n, x);
  }
  if (n == 0) j = j + ScaledJet::from(XReal(-std::log(lambda)), XReal(0.0), XReal(0.0));
  return j.chain(lambda);
}

ScaledJet power_jet(int n, double r) {
  const XReal rx(r);
  const XReal v = pow(rx, n);
  const XReal d1 = n == 0 ? XReal(0.0) : XReal(static_cast<double>(n)) * pow(rx, n - 1);
  const XReal d2 = n < 2 ? XReal(0.0) : XReal(n * (n - 1.0)) * pow(rx, n - 2);
  return ScaledJet::from(v, d1, d2);
}

ScaledJet inverse_power_jet(int n, double r) {
  const XReal rx(r);
  return ScaledJet::from(pow(rx, -n), XReal(-static_cast<double>(n)) * pow(rx, -n - 1),
                         XReal(n * (n + 1.0)) * pow(rx, -n - 2));
}

std::string normalise_name(std::string_view name) {
  std::string s(name);
  for (char& c : s) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (c == '-') c = '_';
  }
  return s;
}

}  // namespace

Side side_of(BasisTag tag) {
  return (tag == BasisTag::IntNaive || tag == BasisTag::IntStable) ? Side::Interior : Side::Exterior;
}

std::string_view to_string(BasisTag tag) {
  switch (tag) {
    case BasisTag::IntNaive: return "INT_NAIVE";
    case BasisTag::IntStable: return "INT_STABLE";
    case BasisTag::ExtNaive: return "EXT_NAIVE";
    case BasisTag::ExtStable: return "EXT_STABLE";
  }
  return "?";
}

std::string_view to_string(Side side) { return side == Side::Interior ? "interior" : "exterior"; }

BasisTag parse_basis(std::string_view name) {
  const std::string s = normalise_name(name);
  if (s == "INT_NAIVE") return BasisTag::IntNaive;
  if (s == "INT_STABLE") return BasisTag::IntStable;
  if (s == "EXT_NAIVE") return BasisTag::ExtNaive;
  if (s == "EXT_STABLE") return BasisTag::ExtStable;
  throw InvalidArgument("unknown basis '" + std::string(name) + "'");
}

Side parse_side(std::string_view name) {
  const std::string s = normalise_name(name);
  if (s == "INTERIOR" || s == "INT") return Side::Interior;
  if (s == "EXTERIOR" || s == "EXT") return Side::Exterior;
  throw InvalidArgument("unknown side '" + std::string(name) + "'");
}

std::pair<RadialKind, RadialKind> basis_pair(BasisTag tag, int n) {
  const bool zero = n == 0;
  switch (tag) {
    case BasisTag::IntNaive: return {zero ? RadialKind::One : RadialKind::Power, RadialKind::BesselI};
    case BasisTag::IntStable: return {zero ? RadialKind::One : RadialKind::Power, RadialKind::StableP};
    case BasisTag::ExtNaive: return {zero ? RadialKind::Log : RadialKind::InversePower, RadialKind::BesselK};
    case BasisTag::ExtStable: return {RadialKind::StableQ, RadialKind::BesselK};
  }
  throw InvalidArgument("unknown basis");
}

double p_series_switch(int n) { return 2.0 * std::sqrt(std::abs(n) + 1.0); }

double q_series_switch(int n) { return 2.0 * std::sqrt(std::max(std::abs(n) - 1.0, 1.0)); }

ScaledJet p_jet(int n, double lambda, double r) {
  check_lambda(lambda);
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("p_eval: r must be >= 0");
  n = std::abs(n);
  const double x = lambda * r;
  check_argument(x);
  if (x < p_series_switch(n)) return bessel_i_series_jet(n, x, true).chain(lambda);
  return p_from(bessel_i_jets(n, x)[n], n, x, lambda);
}

ScaledJet q_jet(int n, double lambda, double r) {
  check_lambda(lambda);
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("q_eval: r must be > 0");
  n = std::abs(n);
  const double x = lambda * r;
  if (x < q_series_switch(n)) return q_from(ScaledJet{}, n, x, lambda);
  return q_from(bessel_k_jets(n, x)[n], n, x, lambda);
}

ValueDeriv p_eval(int n, double lambda, double r) {
  const ScaledJet j = p_jet(n, lambda, r);
  const ValueDeriv out{j.value().to_double(), j.deriv1().to_double()};
  if (!std::isfinite(out.value) || !std::isfinite(out.deriv)) throw OverflowError("p_eval overflow");
  return out;
}

ValueDeriv q_eval(int n, double lambda, double r) {
  const ScaledJet j = q_jet(n, lambda, r);
  const ValueDeriv out{j.value().to_double(), j.deriv1().to_double()};
  if (!std::isfinite(out.value) || !std::isfinite(out.deriv)) throw OverflowError("q_eval overflow");
  return out;
}

ScaledJet radial_jet(RadialKind kind, int n, double lambda, double r) {
  n = std::abs(n);
  switch (kind) {
    case RadialKind::One: return ScaledJet::from(XReal(1.0), XReal(0.0), XReal(0.0));
    case RadialKind::Power: return power_jet(n, r);
    case RadialKind::InversePower: return inverse_power_jet(n, r);
    case RadialKind::Log: return ScaledJet::from(XReal(std::log(r)), XReal(1.0 / r), XReal(-1.0 / (r * r)));
    case RadialKind::BesselI: {
      check_lambda(lambda);
      check_argument(lambda * r);
      return bessel_i_jets(n, lambda * r)[n].chain(lambda);
    }
    case RadialKind::StableP: return p_jet(n, lambda, r);
    case RadialKind::BesselK: {
      check_lambda(lambda);
      if (!(r > 0.0)) throw InvalidArgument("K_n requires r > 0");
      return bessel_k_jets(n, lambda * r)[n].chain(lambda);
    }
    case RadialKind::StableQ: return q_jet(n, lambda, r);
  }
  throw InvalidArgument("unknown radial kind");
}

std::vector<std::pair<ScaledJet, ScaledJet>> radial_pairs(BasisTag basis, int n_max, double lambda,
                                                           double r) {
  check_lambda(lambda);
  const double x = lambda * r;
  std::vector<std::pair<ScaledJet, ScaledJet>> out(static_cast<std::size_t>(n_max) + 1);
  if (side_of(basis) == Side::Interior) {
    check_argument(x);
    const auto ij = bessel_i_jets(n_max, x);
    for (int n = 0; n <= n_max; ++n) {
      out[n].first = n == 0 ? ScaledJet::from(XReal(1.0), XReal(0.0), XReal(0.0)) : power_jet(n, r);
      out[n].second = basis == BasisTag::IntNaive ? ij[n].chain(lambda) : p_from(ij[n], n, x, lambda);
    }
    return out;
  }
  if (!(r > 0.0)) throw InvalidArgument("exterior basis requires r > 0");
  const auto kj = bessel_k_jets(n_max, x);
  for (int n = 0; n <= n_max; ++n) {
    out[n].second = kj[n].chain(lambda);
    if (basis == BasisTag::ExtStable) {
      out[n].first = q_from(kj[n], n, x, lambda);
    } else {
      out[n].first = n == 0 ? radial_jet(RadialKind::Log, 0, lambda, r) : inverse_power_jet(n, r);
    }
  }
  return out;
}

ModeMatrix mode_matrix(BasisTag basis, int n, double lambda, double radius) {
  check_lambda(lambda);
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("radius must be positive");
  n = std::abs(n);
  const auto [fk, gk] = basis_pair(basis, n);
  const ScaledJet f = radial_jet(fk, n, lambda, radius);
  const ScaledJet g = radial_jet(gk, n, lambda, radius);

  ModeMatrix m;
  m.basis = basis;
  m.n = n;
  m.lambda = lambda;
  m.radius = radius;
  m.entries = {f.value(), g.value(), f.deriv1(), g.deriv1()};

  // Below the series switch G and F share a leading power that cancels in
  // the determinant; above it the plain entries are already accurate.
  const double x = lambda * radius;
  ScaledJet companion = g;
  if (basis == BasisTag::IntNaive && x < p_series_switch(n)) companion = p_jet(n, lambda, radius);
  if (basis == BasisTag::ExtNaive && x < q_series_switch(n)) companion = q_jet(n, lambda, radius);
  m.det = f.value() * companion.deriv1() - companion.value() * f.deriv1();
  return m;
}

TwoByTwo ModeMatrix::to_matrix() const {
  std::array<double, 4> v{};
  for (int i = 0; i < 4; ++i) {
    const XReal& e = entries[i];
    if (!e.is_zero() && (e.exponent() > 1023 || e.exponent() < -1021)) {
      throw OverflowError("mode matrix entry outside double range");
    }
    v[i] = e.to_double();
  }
  return {v[0], v[1], v[2], v[3]};
}

ModeMatrix::Scaled ModeMatrix::scaled() const {
  Scaled s;
  std::array<double, 4> v{};
  for (int j = 0; j < 2; ++j) {
    const XReal& top = entries[j];
    const XReal& bot = entries[2 + j];
    std::int64_t emax = 0;
    bool any = false;
    for (const XReal& e : {top, bot}) {
      if (e.is_zero()) continue;
      if (!any || e.exponent() > emax) emax = e.exponent();
      any = true;
    }
    s.col_exp[j] = emax;
    v[j] = top.scaled(emax);
    v[2 + j] = bot.scaled(emax);
  }
  s.matrix = {v[0], v[1], v[2], v[3]};
  return s;
}

double ModeMatrix::normalized_condition() const {
  std::array<double, 4> u{};
  std::array<XReal, 2> norms{};
  for (int j = 0; j < 2; ++j) {
    const XReal& top = entries[j];
    const XReal& bot = entries[2 + j];
    const std::int64_t e = std::max(top.is_zero() ? bot.exponent() : top.exponent(),
                                    bot.is_zero() ? top.exponent() : bot.exponent());
    const double a = top.scaled(e), b = bot.scaled(e);
    const double h = std::hypot(a, b);
    if (h == 0.0) throw InvalidArgument("mode matrix has a zero column");
    norms[j] = XReal::from_parts(h, e);
    u[j] = a / h;
    u[2 + j] = b / h;
  }
  const double c = std::fmin(std::fabs(u[0] * u[1] + u[2] * u[3]), 1.0);
  const double d = std::fabs((det / (norms[0] * norms[1])).to_double());
  if (d == 0.0) throw InfiniteCondition("mode matrix columns are parallel");
  return (1.0 + c) / d;
}

double cond2_normalized(const ModeMatrix& m) { return m.normalized_condition(); }

}  // namespace mbh
