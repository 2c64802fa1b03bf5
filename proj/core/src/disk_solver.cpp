#include "mbh/disk_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mbh/errors.hpp"
#include "mbh/fourier.hpp"

namespace mbh {

namespace {

constexpr double kSideTolerance = 1e-12;

void check_geometry(double lambda, double radius) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("radius must be positive");
}

struct ComplexJet {
  std::complex<double> v, d1, d2;
};

// alpha F + beta G with the extended exponents resolved.
ComplexJet combine(const XComplex& alpha, const ScaledJet& f, const XComplex& beta, const ScaledJet& g) {
  const XComplex v = alpha * f.value() + beta * g.value();
  const XComplex d1 = alpha * f.deriv1() + beta * g.deriv1();
  const XComplex d2 = alpha * f.deriv2() + beta * g.deriv2();
  return {v.to_complex(), d1.to_complex(), d2.to_complex()};
}

void check_hermitian(const std::vector<std::complex<double>>& h, int n, const char* what,
                     std::vector<std::string>& warnings) {
  double scale = 0.0;
  for (const auto& c : h) scale = std::max(scale, std::abs(c));
  for (int k = 1; k <= n; ++k) {
    if (std::abs(h[n + k] - std::conj(h[n - k])) > 1e-12 * scale) {
      warnings.push_back(std::string("real boundary data ") + what + " lost Hermitian mode symmetry at n = " +
                         std::to_string(k));
      return;
    }
  }
}

bool is_real(const std::vector<std::complex<double>>& v) {
  return std::all_of(v.begin(), v.end(), [](const std::complex<double>& c) { return c.imag() == 0.0; });
}

}  // namespace

const ModeSolution& DiskSolution::mode(int n) const {
  if (n < -n_modes || n > n_modes + 1) throw InvalidArgument("mode index out of range");
  return modes[static_cast<std::size_t>(n + n_modes)];
}

ModeSolution& DiskSolution::mode(int n) {
  if (n < -n_modes || n > n_modes + 1) throw InvalidArgument("mode index out of range");
  return modes[static_cast<std::size_t>(n + n_modes)];
}

ModeSolveResult mode_solve(std::complex<double> f_n, std::complex<double> g_n, BasisTag basis, int n,
                           double lambda, double radius) {
  check_geometry(lambda, radius);
  const ModeMatrix m = mode_matrix(basis, n, lambda, radius);
  const ModeMatrix::Scaled s = m.scaled();
  ModeSolveResult r;
  const Vec2 re = solve2(s.matrix, {f_n.real(), g_n.real()}, &r.pivot_perturbed);
  const Vec2 im = solve2(s.matrix, {f_n.imag(), g_n.imag()});
  r.alpha = XComplex::from_parts({re[0], im[0]}, -s.col_exp[0]);
  r.beta = XComplex::from_parts({re[1], im[1]}, -s.col_exp[1]);
  try {
    r.cond = m.normalized_condition();
  } catch (const InfiniteCondition&) {
    r.cond = INFINITY;
  }
  return r;
}

DiskSolution empty_solution(Side side, BasisTag basis, double lambda, double radius, int n_modes) {
  if (side_of(basis) != side) throw InvalidArgument("basis does not match the problem side");
  if (n_modes < 0) throw InvalidArgument("n_modes must be >= 0");
  DiskSolution sol;
  sol.side = side;
  sol.basis = basis;
  sol.lambda = lambda;
  sol.radius = radius;
  sol.n_modes = n_modes;
  sol.modes.resize(static_cast<std::size_t>(2 * n_modes + 2));
  for (int n = -n_modes; n <= n_modes + 1; ++n) sol.mode(n).n = n;
  return sol;
}

DiskSolution solve_dirichlet(const DiskProblem& problem, BasisTag basis) {
  check_geometry(problem.lambda, problem.radius);
  if (side_of(basis) != problem.side) {
    throw InvalidArgument(std::string("basis ") + std::string(to_string(basis)) + " cannot solve the " +
                          std::string(to_string(problem.side)) + " problem");
  }
  const int n = problem.n_modes;
  const std::size_t m = static_cast<std::size_t>(2 * n + 2);
  if (n < 1 || problem.boundary_u.size() != m || problem.boundary_un.size() != m) {
    throw InvalidArgument("boundary data must hold M = 2N+2 samples");
  }
  const auto fh = boundary_modes(problem.boundary_u);
  const auto gh = boundary_modes(problem.boundary_un);

  DiskSolution sol = empty_solution(problem.side, basis, problem.lambda, problem.radius, n);
  if (is_real(problem.boundary_u) && is_real(problem.boundary_un)) {
    check_hermitian(fh, n, "f", sol.warnings);
    check_hermitian(gh, n, "g", sol.warnings);
  }
  std::vector<int> perturbed;
  for (int k = -n; k <= n + 1; ++k) {
    const auto r = mode_solve(fh[k + n], gh[k + n], basis, k, problem.lambda, problem.radius);
    ModeSolution& ms = sol.mode(k);
    ms.alpha = r.alpha;
    ms.beta = r.beta;
    ms.cond = r.cond;
    if (r.pivot_perturbed) perturbed.push_back(k);
  }
  if (!perturbed.empty()) {
    std::string msg = "numerically singular mode matrix, pivot perturbed for n =";
    for (int k : perturbed) msg += " " + std::to_string(k);
    sol.warnings.push_back(msg);
  }
  return sol;
}

FieldSample eval_disk_solution(const DiskSolution& sol, const Vec2& x) {
  const Polar p = to_polar(x);
  const double r = sol.radius;
  if (sol.side == Side::Interior && p.rho > r * (1.0 + kSideTolerance)) {
    throw WrongSide("evaluation point lies outside the interior disk");
  }
  if (sol.side == Side::Exterior && p.rho < r * (1.0 - kSideTolerance)) {
    throw WrongSide("evaluation point lies inside the exterior disk");
  }
  const int n_max = sol.n_modes + 1;
  const auto pairs = radial_pairs(sol.basis, n_max, sol.lambda, p.rho);
  ComplexField total;
  for (const ModeSolution& ms : sol.modes) {
    if (ms.alpha.is_zero() && ms.beta.is_zero()) continue;
    const auto& [f, g] = pairs[static_cast<std::size_t>(std::abs(ms.n))];
    const ComplexJet u = combine(ms.alpha, f, ms.beta, g);
    if (p.rho == 0.0) {
      total += angular_mode_field_at_origin(ms.n, u.v, u.d1, u.d2);
    } else {
      total += angular_mode_field(ms.n, u.v, u.d1, u.d2, p);
    }
  }
  return total.real();
}

ErrorReport error_measures(std::span<const FieldSample> exact, std::span<const FieldSample> approx) {
  if (exact.size() != approx.size() || exact.empty()) {
    throw InvalidArgument("error_measures: sample lists must have equal nonzero length");
  }
  double nu = 0.0, du = 0.0, ng = 0.0, dg = 0.0, nh = 0.0, dh = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const FieldSample& e = exact[i];
    const FieldSample& a = approx[i];
    nu += (e.value - a.value) * (e.value - a.value);
    du += e.value * e.value;
    for (int k = 0; k < 2; ++k) {
      ng += (e.gradient[k] - a.gradient[k]) * (e.gradient[k] - a.gradient[k]);
      dg += e.gradient[k] * e.gradient[k];
    }
    for (int k = 0; k < 3; ++k) {
      nh += (e.hessian[k] - a.hessian[k]) * (e.hessian[k] - a.hessian[k]);
      dh += e.hessian[k] * e.hessian[k];
    }
  }
  if (du == 0.0 || dg == 0.0 || dh == 0.0) throw InvalidArgument("error_measures: exact field block is zero");
  return {std::sqrt(nu / du), std::sqrt(ng / dg), std::sqrt(nh / dh)};
}

DiskProblem sample_problem(Side side, double lambda, double radius, int n_modes,
                           const std::function<FieldSample(const Vec2&)>& field) {
  check_geometry(lambda, radius);
  DiskProblem pb;
  pb.side = side;
  pb.lambda = lambda;
  pb.radius = radius;
  pb.n_modes = n_modes;
  const auto theta = boundary_angles(2 * n_modes + 2);
  for (const double t : theta) {
    const double c = std::cos(t), s = std::sin(t);
    const FieldSample f = field({radius * c, radius * s});
    pb.boundary_u.emplace_back(f.value);
    pb.boundary_un.emplace_back(c * f.gradient[0] + s * f.gradient[1]);
  }
  return pb;
}

}  // namespace mbh
