#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "mbh/bessel.hpp"
#include "mbh/disk_solver.hpp"
#include "mbh/errors.hpp"
#include "mbh/fourier.hpp"
#include "mbh/stable_basis.hpp"
#include "test_util.hpp"

using mbh::BasisTag;
using mbh::FieldSample;
using mbh::Side;
using mbh::Vec2;
using cplx = std::complex<double>;

namespace {

double coeff_abs(const mbh::XComplex& z) { return std::abs(z.to_complex()); }

std::vector<cplx> samples(int m, const std::function<cplx(double)>& f) {
  std::vector<cplx> out;
  for (double t : mbh::boundary_angles(m)) out.push_back(f(t));
  return out;
}

}  // namespace

TEST(Fourier, Examples) {
  const int n = 7, m = 2 * n + 2;
  auto h = mbh::boundary_modes(samples(m, [](double) { return cplx(3.0); }));
  for (int k = -n; k <= n + 1; ++k) EXPECT_LE(std::abs(h[k + n] - (k == 0 ? 3.0 : 0.0)), 1e-14) << k;
  h = mbh::boundary_modes(samples(m, [](double t) { return std::exp(cplx(0, 3 * t)); }));
  for (int k = -n; k <= n + 1; ++k) EXPECT_LE(std::abs(h[k + n] - (k == 3 ? 1.0 : 0.0)), 1e-14) << k;
  h = mbh::boundary_modes(samples(m, [](double t) { return cplx(std::cos(2 * t)); }));
  for (int k = -n; k <= n + 1; ++k) EXPECT_LE(std::abs(h[k + n] - (std::abs(k) == 2 ? 0.5 : 0.0)), 1e-14) << k;
}

TEST(Fourier, NyquistModeGoesToPlusNPlusOne) {
  const int n = 5, m = 2 * n + 2;
  const auto h = mbh::boundary_modes(samples(m, [&](double t) { return 1.0 + std::exp(cplx(0, (n + 1) * t)); }));
  EXPECT_LE(std::abs(h[n] - 1.0), 1e-14);
  EXPECT_LE(std::abs(h[2 * n + 1] - 1.0), 1e-14);
  EXPECT_LE(std::abs(h[0]), 1e-14);
}

TEST(Fourier, OddLengthRejected) {
  std::vector<double> s(7, 1.0);
  try {
    mbh::boundary_modes(s);
    FAIL();
  } catch (const mbh::InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("M = 2N+2"), std::string::npos);
  }
  EXPECT_EQ(mbh::boundary_angles(4)[0], -M_PI);
}

TEST(DiskSolver, HarmonicMode) {
  const double lam = 0.8, r = 1.3;
  for (BasisTag b : {BasisTag::IntNaive, BasisTag::IntStable}) {
    const auto s = mbh::mode_solve(r * r, 2 * r, b, 2, lam, r);
    EXPECT_LE(std::abs(s.alpha.to_complex() - 1.0), 1e-14);
    EXPECT_LE(std::abs(s.beta.to_complex()), 1e-14);
  }
}

TEST(DiskSolver, BesselModeChangeOfBasis) {
  const double lam = 0.8, r = 1.3, x = lam * r;
  const double i1 = mbh::mod_bessel_i_seq(1, x)[1];
  const double i1p = mbh::mod_bessel_derivs(1, x).iprime;
  auto s = mbh::mode_solve(i1, lam * i1p, BasisTag::IntNaive, 1, lam, r);
  EXPECT_LE(std::abs(s.alpha.to_complex()), 1e-14);
  EXPECT_LE(std::abs(s.beta.to_complex() - 1.0), 1e-14);
  s = mbh::mode_solve(i1, lam * i1p, BasisTag::IntStable, 1, lam, r);
  EXPECT_LE(std::abs(s.alpha.to_complex() - lam / 2), 1e-14);
  EXPECT_LE(std::abs(s.beta.to_complex() - 1.0), 1e-14);
  const double k3 = mbh::mod_bessel_k_seq(3, x)[3];
  const double k3p = mbh::mod_bessel_derivs(3, x).kprime;
  s = mbh::mode_solve(k3, lam * k3p, BasisTag::ExtStable, 3, lam, r);
  EXPECT_LE(std::abs(s.alpha.to_complex()), 1e-14);
  EXPECT_LE(std::abs(s.beta.to_complex() - 1.0), 1e-14);
  EXPECT_GE(s.cond, 1.0);
}

TEST(DiskSolver, TrivialData) {
  mbh::DiskProblem p;
  p.side = Side::Interior;
  p.lambda = 0.5;
  p.radius = 0.9;
  p.n_modes = 6;
  p.boundary_u.assign(14, 0.0);
  p.boundary_un.assign(14, 0.0);
  auto sol = mbh::solve_dirichlet(p, BasisTag::IntStable);
  for (const auto& m : sol.modes) {
    EXPECT_TRUE(m.alpha.is_zero());
    EXPECT_TRUE(m.beta.is_zero());
  }
  p.boundary_u.assign(14, 1.0);
  sol = mbh::solve_dirichlet(p, BasisTag::IntStable);
  // Rounding in the zero modes of the transform is divided by P_n(R), which is
  // about 1e-9 for n = 6 here, so beta is compared in boundary-value units.
  for (const auto& m : sol.modes) {
    EXPECT_LE(std::abs(m.alpha.to_complex() - (m.n == 0 ? 1.0 : 0.0)), 1e-13) << m.n;
    const double pn = mbh::p_jet(std::abs(m.n), p.lambda, p.radius).value().to_double();
    EXPECT_LE(coeff_abs(m.beta) * std::fabs(pn), 1e-13) << m.n;
  }
  EXPECT_TRUE(sol.warnings.empty());
  p.lambda = 2.0;
  p.radius = 1.5;
  sol = mbh::solve_dirichlet(p, BasisTag::IntStable);
  for (const auto& m : sol.modes) {
    EXPECT_LE(std::abs(m.alpha.to_complex() - (m.n == 0 ? 1.0 : 0.0)), 1e-13) << m.n;
    EXPECT_LE(coeff_abs(m.beta), 1e-13) << m.n;
  }
  EXPECT_THROW(mbh::solve_dirichlet(p, BasisTag::ExtStable), mbh::InvalidArgument);
  p.boundary_u.pop_back();
  EXPECT_THROW(mbh::solve_dirichlet(p, BasisTag::IntStable), mbh::InvalidArgument);
}

TEST(DiskSolver, EvaluateQuadraticMode) {
  auto sol = mbh::empty_solution(Side::Interior, BasisTag::IntStable, 0.7, 2.0, 4);
  sol.mode(2).alpha = mbh::XComplex(1.0);
  for (Vec2 x : {Vec2{0.3, 0.4}, Vec2{-1.1, 0.2}, Vec2{0.0, 0.0}}) {
    const FieldSample f = mbh::eval_disk_solution(sol, x);
    EXPECT_NEAR(f.value, x[0] * x[0] - x[1] * x[1], 1e-14);
    EXPECT_NEAR(f.gradient[0], 2 * x[0], 1e-14);
    EXPECT_NEAR(f.gradient[1], -2 * x[1], 1e-14);
    EXPECT_NEAR(f.hessian[0], 2.0, 1e-13);
    EXPECT_NEAR(f.hessian[1], 0.0, 1e-13);
    EXPECT_NEAR(f.hessian[2], -2.0, 1e-13);
  }
  EXPECT_THROW(mbh::eval_disk_solution(sol, {2.5, 0.0}), mbh::WrongSide);
}

TEST(DiskSolver, ExteriorZeroMode) {
  const double lam = 1.4;
  auto sol = mbh::empty_solution(Side::Exterior, BasisTag::ExtStable, lam, 0.5, 3);
  sol.mode(0).beta = mbh::XComplex(1.0);
  const Vec2 x{0.9, -0.6};
  const double rho = std::hypot(x[0], x[1]);
  EXPECT_LE(testutil::rel(mbh::eval_disk_solution(sol, x).value, mbh::mod_bessel_k_seq(0, lam * rho)[0]), 1e-15);
  EXPECT_THROW(mbh::eval_disk_solution(sol, {0.1, 0.1}), mbh::WrongSide);
}

TEST(DiskSolver, DerivativesMatchDifferences) {
  std::mt19937_64 g(23);
  std::normal_distribution<double> nd;
  for (Side side : {Side::Interior, Side::Exterior}) {
    const BasisTag b = side == Side::Interior ? BasisTag::IntStable : BasisTag::ExtStable;
    auto sol = mbh::empty_solution(side, b, 0.9, 1.0, 6);
    for (auto& m : sol.modes) {
      const double decay = std::pow(0.5, std::abs(m.n));
      m.alpha = mbh::XComplex(cplx(nd(g), nd(g)) * decay);
      m.beta = mbh::XComplex(cplx(nd(g), nd(g)) * decay);
    }
    auto f = [&](const Vec2& y) { return mbh::eval_disk_solution(sol, y); };
    for (int t = 0; t < 100; ++t) {
      const Vec2 x = side == Side::Interior ? testutil::in_disk(g, {0, 0}, 0.9)
                                            : [&] {
                                                const Vec2 d = testutil::in_disk(g, {0, 0}, 1.0);
                                                const double s = 1.2 + 2.0 * std::hypot(d[0], d[1]);
                                                const double a = std::atan2(d[1], d[0]);
                                                return Vec2{s * std::cos(a), s * std::sin(a)};
                                              }();
      const FieldSample e = f(x);
      const FieldSample fd = testutil::finite_difference(f, x, 1e-6);
      const double gn = std::hypot(e.gradient[0], e.gradient[1]);
      EXPECT_LE(std::hypot(fd.gradient[0] - e.gradient[0], fd.gradient[1] - e.gradient[1]), 1e-7 * gn);
      const auto h = testutil::hessian_from_gradient(f, x, 1e-6);
      const double hn = std::hypot(e.hessian[0], e.hessian[1], e.hessian[2]);
      for (int k = 0; k < 3; ++k) EXPECT_LE(std::fabs(h[k] - e.hessian[k]), 1e-7 * hn);
    }
  }
}

TEST(DiskSolver, OriginIsContinuous) {
  std::mt19937_64 g(29);
  std::normal_distribution<double> nd;
  auto sol = mbh::empty_solution(Side::Interior, BasisTag::IntStable, 0.6, 1.0, 5);
  for (auto& m : sol.modes) {
    m.alpha = mbh::XComplex(cplx(nd(g), nd(g)));
    m.beta = mbh::XComplex(cplx(nd(g), nd(g)));
  }
  const FieldSample o = mbh::eval_disk_solution(sol, {0.0, 0.0});
  const FieldSample near = mbh::eval_disk_solution(sol, {1e-7, -2e-7});
  EXPECT_NEAR(o.value, near.value, 1e-6);
  for (int k = 0; k < 2; ++k) EXPECT_NEAR(o.gradient[k], near.gradient[k], 1e-5);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(o.hessian[k], near.hessian[k], 1e-5);
}

TEST(DiskSolver, ErrorMeasures) {
  std::vector<FieldSample> exact(3);
  for (int i = 0; i < 3; ++i) exact[i] = {1.0 + i, {0.5, -i * 1.0}, {1.0, 2.0, i * 1.0}};
  auto r = mbh::error_measures(exact, exact);
  EXPECT_EQ(r.e_u, 0.0);
  EXPECT_EQ(r.e_g, 0.0);
  EXPECT_EQ(r.e_h, 0.0);
  r = mbh::error_measures(exact, std::vector<FieldSample>(3));
  EXPECT_DOUBLE_EQ(r.e_u, 1.0);
  EXPECT_DOUBLE_EQ(r.e_g, 1.0);
  EXPECT_DOUBLE_EQ(r.e_h, 1.0);
  auto doubled = exact;
  for (auto& f : doubled) f.value *= 2;
  r = mbh::error_measures(exact, doubled);
  EXPECT_DOUBLE_EQ(r.e_u, 1.0);
  EXPECT_EQ(r.e_g, 0.0);
  EXPECT_EQ(r.e_h, 0.0);
  EXPECT_THROW(mbh::error_measures(std::vector<FieldSample>(2), std::vector<FieldSample>(2)), mbh::InvalidArgument);
}

TEST(DiskSolver, BoundaryReproduction) {
  std::mt19937_64 g(31);
  const auto src = testutil::random_sources(g, 20, {3.0, 0.0}, 0.5);
  for (double r : {1e-7, 1e-3, 0.5, 4.0}) {
    const double lam = 1.0;
    const int n = 16, m = 2 * n + 2;
    const auto p = mbh::sample_problem(Side::Interior, lam, r, n, [&](const Vec2& x) {
      const double s = r / 0.4;  // keep sources at the same scaled position
      std::vector<mbh::PointSource> scaled = src;
      for (auto& q : scaled) q.location = {q.location[0] * s, q.location[1] * s};
      return mbh::synth_field(scaled, lam, x);
    });
    const auto sol = mbh::solve_dirichlet(p, BasisTag::IntStable);
    std::vector<cplx> u, un;
    for (double t : mbh::boundary_angles(m)) {
      const Vec2 x{r * std::cos(t), r * std::sin(t)};
      const FieldSample f = mbh::eval_disk_solution(sol, x);
      u.emplace_back(f.value);
      un.emplace_back(std::cos(t) * f.gradient[0] + std::sin(t) * f.gradient[1]);
    }
    const auto f0 = mbh::boundary_modes(p.boundary_u), f1 = mbh::boundary_modes(u);
    const auto g0 = mbh::boundary_modes(p.boundary_un), g1 = mbh::boundary_modes(un);
    // The normal derivative comes from the full gradient, so its rounding is
    // measured against |grad u| on the boundary rather than |u_n|.
    double fs = 0, gs = 0;
    for (int k = 0; k < m; ++k) fs = std::max(fs, std::abs(f0[k]));
    for (double t : mbh::boundary_angles(m)) {
      const FieldSample f = mbh::eval_disk_solution(sol, {r * std::cos(t), r * std::sin(t)});
      gs = std::max(gs, std::hypot(f.gradient[0], f.gradient[1]));
    }
    for (int k = -n; k <= n + 1; ++k) {
      const double kappa = sol.mode(k).cond;
      EXPECT_LE(std::abs(f1[k + n] - f0[k + n]), kappa * 1e-14 * fs) << "r=" << r << " n=" << k;
      EXPECT_LE(std::abs(g1[k + n] - g0[k + n]), kappa * 1e-14 * gs) << "r=" << r << " n=" << k;
    }
  }
}

TEST(DiskSolver, BasesAgreeInBenignRegime) {
  std::mt19937_64 g(37);
  for (double lr : {0.5, 1.0, 2.0, 4.0}) {
    const double r = 1.0, lam = lr / r;
    const auto src = testutil::random_sources(g, 30, {0.0, 0.0}, 1.0);
    std::vector<mbh::PointSource> far = src;
    for (auto& s : far) {
      const double a = std::atan2(s.location[1], s.location[0]);
      s.location = {3.0 * std::cos(a), 3.0 * std::sin(a)};
    }
    auto field = [&](const Vec2& x) { return mbh::synth_field(far, lam, x); };
    const auto p = mbh::sample_problem(Side::Interior, lam, r, 49, field);
    const auto a = mbh::solve_dirichlet(p, BasisTag::IntNaive);
    const auto b = mbh::solve_dirichlet(p, BasisTag::IntStable);
    std::vector<FieldSample> ua, ub;
    for (int t = 0; t < 50; ++t) {
      const Vec2 x = testutil::in_disk(g, {0, 0}, r);
      ua.push_back(mbh::eval_disk_solution(a, x));
      ub.push_back(mbh::eval_disk_solution(b, x));
    }
    EXPECT_LE(mbh::error_measures(ua, ub).e_u, 1e-11) << lr;
  }
}
