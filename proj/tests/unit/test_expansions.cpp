#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "mbh/bessel.hpp"
#include "mbh/errors.hpp"
#include "mbh/helmholtz_expansion.hpp"
#include "mbh/laplace_expansion.hpp"
#include "mbh/mbh_expansion.hpp"
#include "test_util.hpp"

using mbh::FieldSample;
using mbh::PointSource;
using mbh::Vec2;
using mbh::XComplex;
using cplx = std::complex<double>;
using testutil::MaxRel;

namespace {

cplx z_of(const Vec2& v) { return {v[0], v[1]}; }

Vec2 on_circle(std::mt19937_64& g, Vec2 c, double r) {
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  const double t = u(g);
  return {c[0] + r * std::cos(t), c[1] + r * std::sin(t)};
}

Vec2 in_annulus(std::mt19937_64& g, Vec2 c, double r0, double r1) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return on_circle(g, c, r0 + (r1 - r0) * u(g));
}

PointSource unit_charge(Vec2 at) {
  PointSource s;
  s.location = at;
  s.charge = 1.0;
  return s;
}

// Weights that turn the log and K_0 kernel sums into the two halves of
// synth_field.
std::vector<PointSource> split_weights(std::vector<PointSource> src, double lambda) {
  const double k = -1.0 / (2.0 * std::numbers::pi);
  for (auto& s : src) {
    s.charge *= k;
    s.dipole_weight *= k / lambda;
    s.quad_weight *= k / (lambda * lambda);
  }
  return src;
}

template <class A, class B>
double max_coeff_diff(const A& a, const B& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs((a[i] - b[i]).to_complex()));
  return d;
}

}  // namespace

// ---------------------------------------------------------------- Laplace

TEST(LaplaceExpansion, M2MZeroShiftAndLogCharge) {
  mbh::LaplaceMultipole m{{0.5, -0.25}, 1.0, std::vector<cplx>(9)};
  m.coeffs[0] = 1.0;
  m.coeffs[3] = {0.2, 0.1};
  const auto same = mbh::laplace_m2m(m, m.center);
  for (int l = 0; l <= 8; ++l) EXPECT_LE(std::abs(same.coeffs[l] - m.coeffs[l]), 1e-15) << l;

  m.coeffs.assign(9, 0.0);
  m.coeffs[0] = 1.0;
  const cplx nc{-0.1, 0.3};
  const cplx z0 = m.center - nc;
  const auto s = mbh::laplace_m2m(m, nc);
  EXPECT_LE(std::abs(s.coeffs[0] - 1.0), 1e-15);
  for (int l = 1; l <= 8; ++l) EXPECT_LE(std::abs(s.coeffs[l] + std::pow(z0, l) / double(l)), 1e-15) << l;
}

TEST(LaplaceExpansion, M2MFarField) {
  std::mt19937_64 g(41);
  const auto src = testutil::random_sources(g, 20, {0, 0}, 1.0);
  const auto m = mbh::laplace_source_to_multipole(src, 0.0, 40, 1.0);
  const cplx nc{0.3, -0.4};
  const auto s = mbh::laplace_m2m(m, nc);
  const double far = 4 * (std::abs(nc) + 1.0);
  MaxRel e;
  for (int t = 0; t < 50; ++t) {
    const Vec2 x = on_circle(g, {nc.real(), nc.imag()}, far);
    e.add(mbh::laplace_eval(m, x), mbh::laplace_eval(s, x));
  }
  EXPECT_LE(e.value(), 1e-12);
  EXPECT_LE(e.gradient(), 1e-12);
}

TEST(LaplaceExpansion, M2LSingleCharge) {
  mbh::LaplaceMultipole m{{2.0, 1.0}, 0.0, std::vector<cplx>(11)};
  m.coeffs[0] = 1.0;
  const auto loc = mbh::laplace_m2l(m, 0.0);
  const cplx z0 = m.center;
  EXPECT_LE(std::abs(loc.coeffs[0] - std::log(-z0)), 1e-15);
  for (int l = 1; l <= 10; ++l) EXPECT_LE(std::abs(loc.coeffs[l] + 1.0 / (double(l) * std::pow(z0, l))), 1e-15) << l;
}

TEST(LaplaceExpansion, M2LAgainstDirect) {
  std::mt19937_64 g(43);
  const auto src = testutil::random_sources(g, 20, {0, 0}, 1.0);
  const cplx lc{4.0 * std::cos(0.7), 4.0 * std::sin(0.7)};  // separation 4R
  const auto loc = mbh::laplace_m2l(mbh::laplace_source_to_multipole(src, 0.0, 40, 1.0), lc);
  MaxRel e;
  for (int t = 0; t < 50; ++t) {
    const Vec2 x = testutil::in_disk(g, {lc.real(), lc.imag()}, 1.0);
    e.add(mbh::laplace_direct(src, x), mbh::laplace_eval(loc, x));
  }
  EXPECT_LE(e.value(), 1e-10);
  EXPECT_LE(e.gradient(), 1e-10);
}

TEST(LaplaceExpansion, M2LSeparationWarning) {
  mbh::LaplaceMultipole m{{0.0, 0.0}, 1.0, std::vector<cplx>(5, 1.0)};
  mbh::Diagnostics d;
  mbh::laplace_m2l(m, {1.5, 0.0}, &d);
  EXPECT_EQ(d.warnings.size(), 1u);
  d.warnings.clear();
  mbh::laplace_m2l(m, {3.0, 0.0}, &d);
  EXPECT_TRUE(d.warnings.empty());
}

TEST(LaplaceExpansion, L2LIsExact) {
  mbh::LaplaceLocal l{{1.0, 0.0}, 0.0, {1.0, 2.0}};
  const auto s = mbh::laplace_l2l(l, 0.0);
  EXPECT_LE(std::abs(s.coeffs[0] + 1.0), 1e-15);
  EXPECT_LE(std::abs(s.coeffs[1] - 2.0), 1e-15);

  std::mt19937_64 g(47);
  std::normal_distribution<double> nd;
  mbh::LaplaceLocal r{{0.2, -0.1}, 1.0, {}};
  for (int k = 0; k <= 30; ++k) r.coeffs.emplace_back(nd(g), nd(g));
  // The round trip amplifies rounding by about (1 + |shift|)^p, so it uses a
  // short shift; evaluation is checked across the longer one.
  const auto near = mbh::laplace_l2l(r, {0.25, -0.06});
  const auto back = mbh::laplace_l2l(near, r.center);
  for (int k = 0; k <= 30; ++k) EXPECT_LE(std::abs(back.coeffs[k] - r.coeffs[k]), 1e-14 * std::abs(r.coeffs[k]) + 1e-14) << k;
  const auto there = mbh::laplace_l2l(r, {0.5, 0.4});
  MaxRel e;
  for (int t = 0; t < 20; ++t) {
    const Vec2 x = testutil::in_disk(g, {0.5, 0.4}, 0.3);
    e.add(mbh::laplace_eval(r, x), mbh::laplace_eval(there, x));
  }
  EXPECT_LE(e.value(), 1e-13);
}

// ------------------------------------------------------- modified Helmholtz

TEST(HelmholtzExpansion, ZeroShiftIsIdentity) {
  std::mt19937_64 g(53);
  const auto src = testutil::random_sources(g, 5, {0, 0}, 1.0);
  const auto m = mbh::mh_source_to_multipole(src, {0, 0}, 0.8, 10, 1.0);
  EXPECT_LE(max_coeff_diff(mbh::mh_m2m(m, m.center).coeffs, m.coeffs), 1e-15);
  auto l = mbh::mh_m2l(m, {5.0, 0.0});
  EXPECT_LE(max_coeff_diff(mbh::mh_l2l(l, l.center).coeffs, l.coeffs), 1e-15);
  EXPECT_THROW(mbh::mh_m2m(l, {1.0, 0.0}), mbh::InvalidArgument);
  EXPECT_THROW(mbh::mh_l2l(m, {1.0, 0.0}), mbh::InvalidArgument);
  EXPECT_THROW(mbh::mh_m2l(l, {1.0, 0.0}), mbh::InvalidArgument);
}

TEST(HelmholtzExpansion, GrafShift) {
  const double lam = 1.3;
  const PointSource s = unit_charge({0.4, -0.3});
  const auto m = mbh::mh_source_to_multipole({&s, 1}, {0, 0}, lam, 40, 0.5);
  const auto shifted = mbh::mh_m2m(m, {-0.5, 0.2});
  std::mt19937_64 g(59);
  MaxRel e;
  for (int t = 0; t < 50; ++t) {
    const Vec2 x = on_circle(g, {-0.5, 0.2}, 5.0);
    const double rho = std::hypot(x[0] - 0.4, x[1] + 0.3);
    FieldSample want;
    want.value = mbh::mod_bessel_k_seq(0, lam * rho)[0];
    e.add(want, mbh::mh_eval(shifted, x));
  }
  EXPECT_LE(e.value(), 1e-11);
}

TEST(HelmholtzExpansion, M2LAgainstDirect) {
  std::mt19937_64 g(61);
  const double lam = 0.9, r = 1.0;
  const auto src = testutil::random_sources(g, 20, {0, 0}, r);
  const Vec2 lc{6.0 * std::cos(2.0), 6.0 * std::sin(2.0)};  // 3(R + r)
  const auto loc = mbh::mh_m2l(mbh::mh_source_to_multipole(src, {0, 0}, lam, 40, r), lc);
  MaxRel e;
  for (int t = 0; t < 50; ++t) {
    const Vec2 x = testutil::in_disk(g, lc, r);
    e.add(mbh::mh_direct(src, lam, x), mbh::mh_eval(loc, x));
  }
  EXPECT_LE(e.value(), 1e-10);
  EXPECT_LE(e.gradient(), 1e-10);
}

// -------------------------------------------------------- modified biharmonic

TEST(MbhExpansion, SingleChargeAtCenter) {
  const double lam = 0.6;
  const PointSource s = unit_charge({0.0, 0.0});
  const auto m = mbh::mbh_source_to_multipole({&s, 1}, {0, 0}, lam, 10, 0.5);
  EXPECT_LE(std::abs(m.a(0).to_complex() + 1.0 / (2 * std::numbers::pi)), 1e-16);
  EXPECT_LE(std::abs(m.b(0).to_complex()), 1e-16);
  std::mt19937_64 g(67);
  MaxRel e;
  for (int t = 0; t < 20; ++t) {
    const Vec2 x = in_annulus(g, {0, 0}, 1.0, 3.0);
    e.add(mbh::synth_field({&s, 1}, lam, x), mbh::mbh_eval_multipole(m, x));
  }
  EXPECT_LE(e.value(), 1e-12);
  EXPECT_LE(e.gradient(), 1e-12);
}

TEST(MbhExpansion, EmptySources) {
  const auto m = mbh::mbh_source_to_multipole({}, {1.0, 2.0}, 0.5, 6, 1.0);
  for (int l = -6; l <= 6; ++l) {
    EXPECT_TRUE(m.a(l).is_zero());
    EXPECT_TRUE(m.b(l).is_zero());
  }
  const PointSource s = unit_charge({5.0, 0.0});
  EXPECT_THROW(mbh::mbh_source_to_multipole({&s, 1}, {0, 0}, 0.5, 6, 1.0), mbh::InvalidArgument);
}

TEST(MbhExpansion, ManySourcesFarField) {
  std::mt19937_64 g(71);
  const double lam = 0.7;
  const auto src = testutil::random_sources(g, 100, {0.2, 0.1}, 1.0);
  const auto m = mbh::mbh_source_to_multipole(src, {0.2, 0.1}, lam, 49, 1.0);
  MaxRel e;
  for (int t = 0; t < 100; ++t) {
    const Vec2 x = in_annulus(g, {0.2, 0.1}, 3.0, 6.0);
    e.add(mbh::synth_field(src, lam, x), mbh::mbh_eval_multipole(m, x));
  }
  EXPECT_LE(e.value(), 1e-11);
  EXPECT_LE(e.gradient(), 1e-11);
}

TEST(MbhExpansion, ElementaryEvaluations) {
  const double lam = 1.7;
  auto m = mbh::mbh_zero_multipole({0, 0}, lam, 3);
  m.b(0) = XComplex(1.0);
  const Vec2 x{0.8, -1.1};
  EXPECT_LE(testutil::rel(mbh::mbh_eval_multipole(m, x).value,
                          mbh::mod_bessel_k_seq(0, lam * std::hypot(x[0], x[1]))[0]),
            1e-15);
  auto l = mbh::mbh_zero_local({0, 0}, lam, 3);
  l.d(1) = XComplex(1.0);
  l.d(-1) = XComplex(1.0);
  for (Vec2 y : {Vec2{0.3, 0.2}, Vec2{-0.5, 0.1}, Vec2{0.0, 0.0}}) {
    const FieldSample f = mbh::mbh_eval_local(l, y);
    EXPECT_NEAR(f.value, 2 * lam * y[0], 1e-15);
    EXPECT_NEAR(f.gradient[0], 2 * lam, 1e-14);
    EXPECT_NEAR(f.gradient[1], 0.0, 1e-14);
  }
}

TEST(MbhExpansion, EvaluationDerivativesMatchDifferences) {
  std::mt19937_64 g(73);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> u(0.2, 2.0);
  for (int t = 0; t < 50; ++t) {
    const double lam = u(g);
    auto m = mbh::mbh_zero_multipole({0, 0}, lam, 6);
    auto l = mbh::mbh_zero_local({0, 0}, lam, 6);
    for (int k = -6; k <= 6; ++k) {
      m.a(k) = XComplex(cplx(nd(g), nd(g)));
      m.b(k) = XComplex(cplx(nd(g), nd(g)));
      l.c(k) = XComplex(cplx(nd(g), nd(g)));
      l.d(k) = XComplex(cplx(nd(g), nd(g)));
    }
    auto fm = [&](const Vec2& y) { return mbh::mbh_eval_multipole(m, y); };
    auto fl = [&](const Vec2& y) { return mbh::mbh_eval_local(l, y); };
    const Vec2 xm = in_annulus(g, {0, 0}, 1.0, 2.0), xl = testutil::in_disk(g, {0, 0}, 1.0);
    for (auto [x, isloc] : {std::pair{xm, false}, std::pair{xl, true}}) {
      const FieldSample e = isloc ? fl(x) : fm(x);
      const FieldSample fd = isloc ? testutil::finite_difference(fl, x, 1e-6) : testutil::finite_difference(fm, x, 1e-6);
      const double gn = std::hypot(e.gradient[0], e.gradient[1]);
      EXPECT_LE(std::hypot(fd.gradient[0] - e.gradient[0], fd.gradient[1] - e.gradient[1]), 1e-7 * gn) << t;
      const auto h = isloc ? testutil::hessian_from_gradient(fl, x, 1e-6) : testutil::hessian_from_gradient(fm, x, 1e-6);
      const double hn = std::hypot(e.hessian[0], e.hessian[1], e.hessian[2]);
      for (int k = 0; k < 3; ++k) EXPECT_LE(std::fabs(h[k] - e.hessian[k]), 1e-7 * hn) << t;
    }
  }
}

TEST(MbhExpansion, M2M) {
  std::mt19937_64 g(79);
  const double lam = 0.9;
  const auto src = testutil::random_sources(g, 20, {0, 0}, 1.0);
  const auto m = mbh::mbh_source_to_multipole(src, {0, 0}, lam, 40, 1.0);
  const auto same = mbh::mbh_m2m(m, m.center);
  EXPECT_LE(max_coeff_diff(same.q_coeffs, m.q_coeffs), 1e-15);
  EXPECT_LE(max_coeff_diff(same.k_coeffs, m.k_coeffs), 1e-15);

  const Vec2 nc{0.3, 0.35};
  const double rho0 = std::hypot(nc[0], nc[1]);
  const auto s = mbh::mbh_m2m(m, nc);
  MaxRel e;
  for (int t = 0; t < 50; ++t) {
    const Vec2 x = on_circle(g, nc, 4 * (1.0 + rho0));
    e.add(mbh::mbh_eval_multipole(m, x), mbh::mbh_eval_multipole(s, x));
  }
  EXPECT_LE(e.value(), 1e-11);

  // Two shifts against one.
  const Vec2 mid{0.1, 0.2};
  const auto two = mbh::mbh_m2m(mbh::mbh_m2m(m, mid), nc);
  MaxRel c;
  for (int t = 0; t < 50; ++t) {
    const Vec2 x = on_circle(g, nc, 4 * (1.0 + rho0));
    c.add(mbh::mbh_eval_multipole(s, x), mbh::mbh_eval_multipole(two, x));
  }
  EXPECT_LE(c.value(), 1e-12);
}

TEST(MbhExpansion, M2MFiniteBand) {
  const double lam = 1.1;
  auto m = mbh::mbh_zero_multipole({0, 0}, lam, 4);
  m.a(0) = XComplex(cplx(0.7, -0.2));
  m.a(1) = XComplex(cplx(-0.3, 0.5));
  const Vec2 nc{-0.2, 0.15};
  const auto s = mbh::mbh_m2m(m, nc);
  const double rho0 = std::hypot(nc[0], nc[1]), theta0 = std::atan2(-nc[1], -nc[0]);  // x0 = old - new
  const cplx want = m.a(0).to_complex() * (lam * rho0 / 2) * std::exp(cplx(0, -theta0)) + m.a(1).to_complex();
  EXPECT_LE(std::abs(s.a(1).to_complex() - want), 1e-15);
}

TEST(MbhExpansion, M2L) {
  std::mt19937_64 g(83);
  const double lam = 0.8;
  const PointSource s = unit_charge(testutil::in_disk(g, {0, 0}, 1.0));
  const Vec2 lc{3.0 * std::cos(0.4), 3.0 * std::sin(0.4)};
  const auto loc = mbh::mbh_m2l(mbh::mbh_source_to_multipole({&s, 1}, {0, 0}, lam, 40, 1.0), lc);
  MaxRel e;
  for (int t = 0; t < 50; ++t) {
    const Vec2 x = testutil::in_disk(g, lc, 1.0);
    e.add(mbh::synth_field({&s, 1}, lam, x), mbh::mbh_eval_local(loc, x));
  }
  EXPECT_LE(e.value(), 1e-10);
  EXPECT_LE(e.gradient(), 1e-10);

  const auto zero = mbh::mbh_m2l(mbh::mbh_zero_multipole({0, 0}, lam, 5), lc);
  for (int l = -5; l <= 5; ++l) {
    EXPECT_TRUE(zero.c(l).is_zero());
    EXPECT_TRUE(zero.d(l).is_zero());
  }
  mbh::Diagnostics d;
  mbh::mbh_m2l(mbh::mbh_source_to_multipole({&s, 1}, {0, 0}, lam, 5, 1.0), {0.5, 0.0}, &d);
  EXPECT_FALSE(d.warnings.empty());
}

// Large lambda rho_0: the K terms are below 1e-10 of the log terms.
TEST(MbhExpansion, M2LLargeLambdaMatchesLaplace) {
  std::mt19937_64 g(89);
  const double lam = 10.0, r = 0.25;
  const auto src = testutil::random_sources(g, 10, {0, 0}, r);
  const Vec2 lc{3.0, 0.0};
  const auto loc = mbh::mbh_m2l(mbh::mbh_source_to_multipole(src, {0, 0}, lam, 30, r), lc);
  const auto w = split_weights(src, lam);
  const auto lap = mbh::laplace_m2l(mbh::laplace_source_to_multipole(w, 0.0, 30, r), z_of(lc));
  MaxRel e;
  for (int t = 0; t < 50; ++t) {
    const Vec2 x = testutil::in_disk(g, lc, r);
    e.add(mbh::laplace_eval(lap, x), mbh::mbh_eval_local(loc, x));
  }
  EXPECT_LE(e.value(), 1e-9);
}

TEST(MbhExpansion, L2L) {
  std::mt19937_64 g(97);
  std::normal_distribution<double> nd;
  const double lam = 0.9;
  auto l = mbh::mbh_zero_local({0.1, -0.2}, lam, 40);
  for (int k = -40; k <= 40; ++k) {
    const double decay = std::pow(0.6, std::abs(k));
    l.c(k) = XComplex(cplx(nd(g), nd(g)) * decay);
    l.d(k) = XComplex(cplx(nd(g), nd(g)) * decay);
  }
  const auto same = mbh::mbh_l2l(l, l.center);
  EXPECT_LE(max_coeff_diff(same.p_coeffs, l.p_coeffs), 1e-15);
  EXPECT_LE(max_coeff_diff(same.pow_coeffs, l.pow_coeffs), 1e-15);

  const Vec2 cc{0.4, 0.1};
  const auto child = mbh::mbh_l2l(l, cc);
  MaxRel e;
  for (int t = 0; t < 50; ++t) {
    const Vec2 x = testutil::in_disk(g, cc, 0.3);
    e.add(mbh::mbh_eval_local(l, x), mbh::mbh_eval_local(child, x));
  }
  EXPECT_LE(e.value(), 1e-11);
  EXPECT_LE(e.gradient(), 1e-11);
}

// d_l (lambda rho)^l e^{i l theta} for l >= 0 is Re sum d_l lambda^l (z - c)^l.
TEST(MbhExpansion, L2LPowerPartMatchesLaplace) {
  std::mt19937_64 g(101);
  std::normal_distribution<double> nd;
  const double lam = 1.3;
  const int p = 12;
  auto l = mbh::mbh_zero_local({0.2, 0.1}, lam, p);
  mbh::LaplaceLocal lap{{0.2, 0.1}, 0.0, {}};
  for (int k = 0; k <= p; ++k) {
    const cplx c(nd(g), nd(g));
    l.d(k) = XComplex(c);
    lap.coeffs.push_back(c * std::pow(lam, k));
  }
  const Vec2 cc{-0.3, 0.25};
  const auto a = mbh::mbh_l2l(l, cc);
  const auto b = mbh::laplace_l2l(lap, z_of(cc));
  MaxRel e;
  for (int t = 0; t < 20; ++t) {
    const Vec2 x = testutil::in_disk(g, cc, 0.5);
    e.add(mbh::laplace_eval(b, x), mbh::mbh_eval_local(a, x));
  }
  EXPECT_LE(e.value(), 1e-13);
}
