#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mbh/disk_solver.hpp"
#include "mbh/greens.hpp"
#include "mbh/stable_basis.hpp"

namespace mbh {

enum class SweepAxis { Lambda, Radius };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

// Pseudo-basis name: error of u_H - u_L evaluated directly, no solve.
inline constexpr std::string_view kExactDifference = "exact-difference";

struct SweepConfig {
  SweepAxis axis = SweepAxis::Lambda;
  double fixed_value = 0.5;  // the other parameter
  int j_min = -24;
  int j_max = 8;
  int draws_per_octave = 10;
  int n_modes = 49;
  int n_sources = 100;
  int n_targets = 100;
  std::uint64_t seed = 1;
  Side side = Side::Interior;
  std::vector<std::string> bases;        // empty: both bases of the side (+ exact-difference for errors)
  std::vector<int> cond_modes{0, 1, 2, 49};

  void validate() const;
};

struct SweepPoint {
  int j = 0;
  int draw = 0;
  double lambda = 0.0;
  double radius = 0.0;
};

// The draw-th value of octave j, and the (lambda, radius) it implies.
SweepPoint sweep_point(const SweepConfig& cfg, int j, int draw);

struct CondRow {
  SweepPoint point;
  int n = 0;
  std::string basis;
  double cond = 0.0;
};

struct ErrorRow {
  SweepPoint point;
  std::string basis;
  ErrorReport err;
  bool failed = false;  // solver error; err holds NaN
  std::string message;
};

struct Geometry {
  std::vector<PointSource> sources;
  std::vector<Vec2> targets;
};

// Random sources and targets for one sweep point.  Interior: sources in
// [-2R,2R]^2 outside |s| = 2R, targets in |t| < R.  Exterior: sources in
// |s| < R/2, targets in [-2R,2R]^2 outside |t| = R.
Geometry sweep_geometry(const SweepConfig& cfg, const SweepPoint& pt);

struct PointErrors {
  std::vector<ErrorRow> rows;
  double seconds = 0.0;
};

PointErrors error_point(const SweepConfig& cfg, const SweepPoint& pt);

std::vector<CondRow> cond_sweep(const SweepConfig& cfg);
std::vector<ErrorRow> error_sweep(const SweepConfig& cfg);

void write_cond_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<CondRow>& rows);
void write_error_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<ErrorRow>& rows);

// Translation operator checks.  M2M and M2L rows compare with direct
// summation, L2L rows with the expansion they were shifted from.
struct TranslationConfig {
  std::vector<int> orders{10, 20, 40};
  std::vector<double> separation_ratios{3.0};
  double lambda = 1.0;
  double small_lambda_rho = 1e-6;  // lambda * rho0 for the small-lambda rows
  int n_sources = 20;
  int n_targets = 50;
  std::uint64_t seed = 1;
};

struct TranslationRow {
  std::string op;
  int p = 0;
  double separation_ratio = 0.0;
  double lambda_rho = 0.0;  // lambda times the shift distance
  double err_value = 0.0;
  double err_gradient = 0.0;
};

std::vector<TranslationRow> translation_check(const TranslationConfig& cfg);
void write_translation_csv(std::ostream& os, const std::vector<TranslationRow>& rows);

// Full-precision scientific formatting used by every CSV writer.
std::string format_real(double v);

}  // namespace mbh
