#pragma once

#include <iosfwd>
#include <vector>

#include "mbh/disk_solver.hpp"

namespace mbh {

// Boundary-data file:
//   side lambda radius N
//   f_0 g_0
//   ...            (M = 2N+2 lines, theta_j = -pi + 2 pi j / M)
// A sample line may instead hold four numbers, f_re f_im g_re g_im.  Blank
// lines and lines starting with '#' are skipped.  Errors carry the line.
DiskProblem read_boundary_data(std::istream& in);
void write_boundary_data(std::ostream& out, const DiskProblem& p);

// Coefficient file:
//   side basis lambda radius N
//   n alpha_re alpha_im alpha_exp beta_re beta_im beta_exp cond
// for n = -N..N+1, where alpha = (alpha_re + i alpha_im) * 2^alpha_exp.
void write_solution(std::ostream& out, const DiskSolution& sol);
DiskSolution read_solution(std::istream& in);

// Target file: one "x y" per line; output "x y u ux uy uxx uxy uyy".
std::vector<Vec2> read_targets(std::istream& in);
void write_evaluations(std::ostream& out, const DiskSolution& sol, const std::vector<Vec2>& targets);

}  // namespace mbh
