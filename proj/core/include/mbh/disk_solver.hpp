#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mbh/field.hpp"
#include "mbh/stable_basis.hpp"
#include "mbh/xreal.hpp"

namespace mbh {

// Dirichlet data on the circle |x| = radius: f = u and g = du/dr sampled at
// M = 2N+2 equispaced angles theta_j = -pi + 2 pi j/M.  For both sides g is
// the derivative in the increasing-r direction.
struct DiskProblem {
  Side side = Side::Interior;
  double lambda = 1.0;
  double radius = 1.0;
  int n_modes = 1;  // N
  std::vector<std::complex<double>> boundary_u;
  std::vector<std::complex<double>> boundary_un;
};

struct ModeSolveResult {
  XComplex alpha;
  XComplex beta;
  double cond = 0.0;
  // The elimination pivot fell below eps times the largest entry.
  bool pivot_perturbed = false;
};

struct ModeSolution {
  int n = 0;
  XComplex alpha;
  XComplex beta;
  double cond = 0.0;
};

struct DiskSolution {
  Side side = Side::Interior;
  BasisTag basis = BasisTag::IntStable;
  double lambda = 1.0;
  double radius = 1.0;
  int n_modes = 1;
  std::vector<ModeSolution> modes;  // n = -N..N+1
  std::vector<std::string> warnings;

  const ModeSolution& mode(int n) const;
  ModeSolution& mode(int n);
};

struct ErrorReport {
  double e_u = 0.0;
  double e_g = 0.0;
  double e_h = 0.0;
};

ModeSolveResult mode_solve(std::complex<double> f_n, std::complex<double> g_n, BasisTag basis, int n,
                           double lambda, double radius);

DiskSolution solve_dirichlet(const DiskProblem& problem, BasisTag basis);

// An all-zero solution with the given layout, for building expansions by hand.
DiskSolution empty_solution(Side side, BasisTag basis, double lambda, double radius, int n_modes);

FieldSample eval_disk_solution(const DiskSolution& sol, const Vec2& x);

ErrorReport error_measures(std::span<const FieldSample> exact, std::span<const FieldSample> approx);

// Samples u and du/dr of a known field on the boundary circle.
DiskProblem sample_problem(Side side, double lambda, double radius, int n_modes,
                           const std::function<FieldSample(const Vec2&)>& field);

}  // namespace mbh
