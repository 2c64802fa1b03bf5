#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>

namespace mbh {

// ldexp with a 64-bit exponent, saturating to 0 / inf outside double range.
inline double ldexp64(double m, std::int64_t e) {
  if (e > 4000) e = 4000;
  if (e < -4000) e = -4000;
  return std::ldexp(m, static_cast<int>(e));
}

// A real number stored as mant * 2^exp with |mant| in [0.5, 1), or zero.
// Every operation rounds exactly like the corresponding double operation;
// only the exponent range is unbounded.  Used internally wherever powers
// r^{±n}, n! or I_n/K_n at tiny arguments leave the double range.
class XReal {
 public:
  constexpr XReal() = default;
  XReal(double v) {  // NOLINT(google-explicit-constructor)
    int e = 0;
    mant_ = std::frexp(v, &e);
    exp_ = (mant_ == 0.0 || !std::isfinite(mant_)) ? 0 : e;
  }

  static XReal from_parts(double m, std::int64_t e) {
    XReal r(m);
    if (r.mant_ != 0.0) r.exp_ += e;
    return r;
  }

  double mantissa() const { return mant_; }
  std::int64_t exponent() const { return exp_; }
  bool is_zero() const { return mant_ == 0.0; }
  bool is_finite() const { return std::isfinite(mant_); }

  double to_double() const { return ldexp64(mant_, exp_); }
  // The value divided by 2^ref, as a double.
  double scaled(std::int64_t ref) const { return ldexp64(mant_, exp_ - ref); }
  // log|x|
  double log_abs() const {
    return std::log(std::fabs(mant_)) + static_cast<double>(exp_) * 0.69314718055994530942;
  }

  XReal operator-() const { return from_parts(-mant_, exp_); }

  friend XReal operator*(XReal a, XReal b) { return from_parts(a.mant_ * b.mant_, a.exp_ + b.exp_); }
  friend XReal operator/(XReal a, XReal b) { return from_parts(a.mant_ / b.mant_, a.exp_ - b.exp_); }
  friend XReal operator+(XReal a, XReal b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.exp_ >= b.exp_) return from_parts(a.mant_ + ldexp64(b.mant_, b.exp_ - a.exp_), a.exp_);
    return from_parts(b.mant_ + ldexp64(a.mant_, a.exp_ - b.exp_), b.exp_);
  }
  friend XReal operator-(XReal a, XReal b) { return a + (-b); }
  XReal& operator+=(XReal b) { return *this = *this + b; }
  XReal& operator-=(XReal b) { return *this = *this - b; }
  XReal& operator*=(XReal b) { return *this = *this * b; }
  XReal& operator/=(XReal b) { return *this = *this / b; }

  friend XReal abs(XReal a) { return from_parts(std::fabs(a.mant_), a.exp_); }
  friend bool operator<(XReal a, XReal b) { return (a - b).mant_ < 0.0; }
  friend bool operator>(XReal a, XReal b) { return b < a; }
  friend bool operator==(XReal a, XReal b) { return a.mant_ == b.mant_ && a.exp_ == b.exp_; }

 private:
  double mant_ = 0.0;
  std::int64_t exp_ = 0;
};

// x^n for integer n.
inline XReal pow(XReal x, int n) {
  if (n == 0) return XReal(1.0);
  if (x.is_zero()) return XReal(0.0);
  if (n > 900 || n < -900) {
    XReal half = pow(x, n / 2);
    return half * half * pow(x, n % 2);
  }
  return XReal::from_parts(std::pow(x.mantissa(), n), x.exponent() * n);
}

// e^y without overflow.
inline XReal xexp(double y) {
  constexpr double ln2_hi = 6.93147180369123816490e-01;
  constexpr double ln2_lo = 1.90821492927058770002e-10;
  const double k = std::nearbyint(y * 1.44269504088896340736);
  const double r = (y - k * ln2_hi) - k * ln2_lo;
  return XReal::from_parts(std::exp(r), static_cast<std::int64_t>(k));
}

// |x| / |y| as a double (both nonzero).
inline double ratio(XReal x, XReal y) { return (x / y).to_double(); }

class XComplex {
 public:
  XComplex() = default;
  XComplex(std::complex<double> z) { set(z, 0); }  // NOLINT(google-explicit-constructor)
  XComplex(double x) { set({x, 0.0}, 0); }          // NOLINT(google-explicit-constructor)
  XComplex(XReal x) { set({x.mantissa(), 0.0}, x.exponent()); }  // NOLINT(google-explicit-constructor)

  static XComplex from_parts(std::complex<double> m, std::int64_t e) {
    XComplex r;
    r.set(m, e);
    return r;
  }

  std::complex<double> mantissa() const { return m_; }
  std::int64_t exponent() const { return e_; }
  bool is_zero() const { return m_.real() == 0.0 && m_.imag() == 0.0; }
  std::complex<double> to_complex() const { return scaled(0); }
  std::complex<double> scaled(std::int64_t ref) const {
    return {ldexp64(m_.real(), e_ - ref), ldexp64(m_.imag(), e_ - ref)};
  }
  XReal abs() const { return XReal::from_parts(std::abs(m_), e_); }
  XComplex conj() const { return from_parts(std::conj(m_), e_); }

  XComplex operator-() const { return from_parts(-m_, e_); }
  friend XComplex operator*(XComplex a, XComplex b) { return from_parts(a.m_ * b.m_, a.e_ + b.e_); }
  friend XComplex operator*(XComplex a, XReal b) {
    return from_parts(a.m_ * b.mantissa(), a.e_ + b.exponent());
  }
  friend XComplex operator*(XReal b, XComplex a) { return a * b; }
  friend XComplex operator*(XComplex a, std::complex<double> b) { return a * XComplex(b); }
  friend XComplex operator*(std::complex<double> b, XComplex a) { return a * XComplex(b); }
  friend XComplex operator*(XComplex a, double b) { return a * XComplex(b); }
  friend XComplex operator/(XComplex a, XReal b) {
    return from_parts(a.m_ / b.mantissa(), a.e_ - b.exponent());
  }
  friend XComplex operator+(XComplex a, XComplex b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.e_ >= b.e_) return from_parts(a.m_ + b.scaled(a.e_), a.e_);
    return from_parts(b.m_ + a.scaled(b.e_), b.e_);
  }
  friend XComplex operator-(XComplex a, XComplex b) { return a + (-b); }
  XComplex& operator+=(XComplex b) { return *this = *this + b; }
  XComplex& operator-=(XComplex b) { return *this = *this - b; }

 private:
  void set(std::complex<double> m, std::int64_t e) {
    const double s = std::max(std::fabs(m.real()), std::fabs(m.imag()));
    if (s == 0.0 || !std::isfinite(s)) {
      m_ = m;
      e_ = 0;
      return;
    }
    int k = 0;
    std::frexp(s, &k);
    m_ = {std::ldexp(m.real(), -k), std::ldexp(m.imag(), -k)};
    e_ = e + k;
  }

  std::complex<double> m_{0.0, 0.0};
  std::int64_t e_ = 0;
};

// A function value with its first two derivatives, sharing one binary
// exponent: the represented numbers are v*2^exp, d1*2^exp, d2*2^exp.
struct ScaledJet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  std::int64_t exp = 0;

  XReal value() const { return XReal::from_parts(v, exp); }
  XReal deriv1() const { return XReal::from_parts(d1, exp); }
  XReal deriv2() const { return XReal::from_parts(d2, exp); }

  static ScaledJet from(XReal v, XReal d1, XReal d2) {
    std::int64_t e = 0;
    bool any = false;
    for (const XReal& x : {v, d1, d2}) {
      if (x.is_zero()) continue;
      if (!any || x.exponent() > e) e = x.exponent();
      any = true;
    }
    return {v.scaled(e), d1.scaled(e), d2.scaled(e), e};
  }

  ScaledJet operator*(XReal s) const {
    return {v * s.mantissa(), d1 * s.mantissa(), d2 * s.mantissa(), exp + s.exponent()};
  }
  ScaledJet operator-() const { return {-v, -d1, -d2, exp}; }
  friend ScaledJet operator+(const ScaledJet& a, const ScaledJet& b) {
    return from(a.value() + b.value(), a.deriv1() + b.deriv1(), a.deriv2() + b.deriv2());
  }
  friend ScaledJet operator-(const ScaledJet& a, const ScaledJet& b) { return a + (-b); }
  // Derivatives with respect to r where the jet was taken in x = lambda*r.
  ScaledJet chain(double lambda) const { return {v, d1 * lambda, d2 * lambda * lambda, exp}; }
};

}  // namespace mbh
