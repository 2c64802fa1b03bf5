#include "mbh/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>

#include "mbh/errors.hpp"
#include "mbh/helmholtz_expansion.hpp"
#include "mbh/laplace_expansion.hpp"
#include "mbh/mbh_expansion.hpp"
#include "mbh/rng.hpp"

namespace mbh {

namespace {

Vec2 unit_direction(SubstreamRng& rng) {
  for (;;) {
    const double a = rng.uniform(-0.5, 0.5), b = rng.uniform(-0.5, 0.5);
    const double n = std::hypot(a, b);
    if (n > 1e-8) return {a / n, b / n};
  }
}

PointSource random_source(SubstreamRng& rng, const Vec2& at) {
  PointSource s;
  s.location = at;
  s.charge = rng.uniform(-1.0, 1.0);
  s.dipole_weight = rng.uniform();
  s.quad_weight = rng.uniform();
  s.dipole_dir = unit_direction(rng);
  s.quad_dirs = {unit_direction(rng), unit_direction(rng)};
  return s;
}

Vec2 in_disk(SubstreamRng& rng, const Vec2& c, double r) {
  const double rho = r * std::sqrt(rng.uniform());
  const double t = rng.uniform(-std::numbers::pi, std::numbers::pi);
  return {c[0] + rho * std::cos(t), c[1] + rho * std::sin(t)};
}

// Uniform in [-2R, 2R]^2 with norm above r_min.
Vec2 in_box_outside(SubstreamRng& rng, double big_r, double r_min) {
  for (;;) {
    const Vec2 p{rng.uniform(-2.0 * big_r, 2.0 * big_r), rng.uniform(-2.0 * big_r, 2.0 * big_r)};
    if (std::hypot(p[0], p[1]) > r_min) return p;
  }
}

std::vector<std::string> resolve_bases(const SweepConfig& cfg, bool with_exact) {
  std::vector<std::string> out;
  if (cfg.bases.empty()) {
    if (cfg.side == Side::Interior) {
      out = {std::string(to_string(BasisTag::IntNaive)), std::string(to_string(BasisTag::IntStable))};
    } else {
      out = {std::string(to_string(BasisTag::ExtNaive)), std::string(to_string(BasisTag::ExtStable))};
    }
    if (with_exact) out.emplace_back(kExactDifference);
    return out;
  }
  for (const std::string& b : cfg.bases) {
    if (b == kExactDifference) {
      if (!with_exact) throw InvalidArgument("exact-difference has no mode matrix");
      out.push_back(b);
      continue;
    }
    const BasisTag tag = parse_basis(b);
    if (side_of(tag) != cfg.side) throw InvalidArgument("basis " + b + " does not match the sweep side");
    out.emplace_back(to_string(tag));
  }
  return out;
}

double max_rel(double err, double scale) { return scale > 0.0 ? err / scale : err; }

struct MaxError {
  double ev = 0.0, eg = 0.0, sv = 0.0, sg = 0.0;
  void add(const FieldSample& exact, const FieldSample& approx) {
    ev = std::max(ev, std::fabs(exact.value - approx.value));
    eg = std::max(eg, std::hypot(exact.gradient[0] - approx.gradient[0], exact.gradient[1] - approx.gradient[1]));
    sv = std::max(sv, std::fabs(exact.value));
    sg = std::max(sg, std::hypot(exact.gradient[0], exact.gradient[1]));
  }
};

}  // namespace

std::string_view to_string(SweepAxis axis) { return axis == SweepAxis::Lambda ? "lambda" : "radius"; }

SweepAxis parse_axis(std::string_view name) {
  if (name == "lambda") return SweepAxis::Lambda;
  if (name == "radius" || name == "r") return SweepAxis::Radius;
  throw InvalidArgument("unknown sweep axis: " + std::string(name));
}

void SweepConfig::validate() const {
  if (j_min > j_max) throw InvalidArgument("j_min must not exceed j_max");
  if (draws_per_octave < 1 || n_sources < 1 || n_targets < 1) throw InvalidArgument("counts must be >= 1");
  if (n_modes < 1) throw InvalidArgument("n_modes must be >= 1");
  if (!(fixed_value > 0.0) || !std::isfinite(fixed_value)) throw InvalidArgument("fixed value must be positive");
  for (int n : cond_modes) {
    if (n < 0) throw InvalidArgument("cond modes must be >= 0");
  }
}

SweepPoint sweep_point(const SweepConfig& cfg, int j, int draw) {
  SubstreamRng rng(cfg.seed, j, draw, StreamRole::Axis);
  const double v = std::ldexp(rng.uniform(1.0, 2.0), j);
  SweepPoint pt{j, draw, 0.0, 0.0};
  if (cfg.axis == SweepAxis::Lambda) {
    pt.lambda = v;
    pt.radius = cfg.fixed_value;
  } else {
    pt.lambda = cfg.fixed_value;
    pt.radius = v;
  }
  return pt;
}

Geometry sweep_geometry(const SweepConfig& cfg, const SweepPoint& pt) {
  Geometry g;
  const double r = pt.radius;
  SubstreamRng src(cfg.seed, pt.j, pt.draw, StreamRole::Sources);
  SubstreamRng tgt(cfg.seed, pt.j, pt.draw, StreamRole::Targets);
  for (int i = 0; i < cfg.n_sources; ++i) {
    const Vec2 at = cfg.side == Side::Interior ? in_box_outside(src, r, 2.0 * r) : in_disk(src, {0.0, 0.0}, 0.5 * r);
    g.sources.push_back(random_source(src, at));
  }
  for (int i = 0; i < cfg.n_targets; ++i) {
    g.targets.push_back(cfg.side == Side::Interior ? in_disk(tgt, {0.0, 0.0}, r) : in_box_outside(tgt, r, r));
  }
  return g;
}

PointErrors error_point(const SweepConfig& cfg, const SweepPoint& pt) {
  const auto t0 = std::chrono::steady_clock::now();
  PointErrors out;
  const Geometry g = sweep_geometry(cfg, pt);
  const auto field = [&](const Vec2& x) { return synth_field(g.sources, pt.lambda, x); };
  std::vector<FieldSample> exact;
  exact.reserve(g.targets.size());
  for (const Vec2& t : g.targets) exact.push_back(field(t));

  std::optional<DiskProblem> problem;
  for (const std::string& name : resolve_bases(cfg, true)) {
    ErrorRow row;
    row.point = pt;
    row.basis = name;
    try {
      std::vector<FieldSample> approx;
      approx.reserve(g.targets.size());
      if (name == kExactDifference) {
        for (const Vec2& t : g.targets) approx.push_back(split_field(g.sources, pt.lambda, t).difference());
      } else {
        if (!problem) problem = sample_problem(cfg.side, pt.lambda, pt.radius, cfg.n_modes, field);
        const DiskSolution sol = solve_dirichlet(*problem, parse_basis(name));
        for (const Vec2& t : g.targets) approx.push_back(eval_disk_solution(sol, t));
      }
      row.err = error_measures(exact, approx);
    } catch (const Error& e) {
      row.failed = true;
      row.message = e.what();
      row.err = {NAN, NAN, NAN};
    }
    out.rows.push_back(std::move(row));
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::vector<CondRow> cond_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto bases = resolve_bases(cfg, false);
  std::vector<CondRow> rows;
  for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
    for (int d = 0; d < cfg.draws_per_octave; ++d) {
      const SweepPoint pt = sweep_point(cfg, j, d);
      for (int n : cfg.cond_modes) {
        for (const std::string& b : bases) {
          double c = 0.0;
          try {
            c = mode_matrix(parse_basis(b), n, pt.lambda, pt.radius).normalized_condition();
          } catch (const InfiniteCondition&) {
            c = INFINITY;
          } catch (const Error&) {
            c = NAN;
          }
          rows.push_back({pt, n, b, c});
        }
      }
    }
  }
  return rows;
}

std::vector<ErrorRow> error_sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<ErrorRow> rows;
  for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
    for (int d = 0; d < cfg.draws_per_octave; ++d) {
      auto pe = error_point(cfg, sweep_point(cfg, j, d));
      for (auto& r : pe.rows) rows.push_back(std::move(r));
    }
  }
  return rows;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_cond_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<CondRow>& rows) {
  os << "sweep_axis,n,lambda,radius,lambda_times_radius,basis,cond_normalized\n";
  for (const CondRow& r : rows) {
    os << to_string(cfg.axis) << ',' << r.n << ',' << format_real(r.point.lambda) << ','
       << format_real(r.point.radius) << ',' << format_real(r.point.lambda * r.point.radius) << ',' << r.basis
       << ',' << format_real(r.cond) << '\n';
  }
}

void write_error_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<ErrorRow>& rows) {
  os << "sweep_axis,lambda,radius,lambda_times_radius,basis,e_u,e_g,e_h\n";
  for (const ErrorRow& r : rows) {
    os << to_string(cfg.axis) << ',' << format_real(r.point.lambda) << ',' << format_real(r.point.radius) << ','
       << format_real(r.point.lambda * r.point.radius) << ',' << r.basis << ',' << format_real(r.err.e_u) << ','
       << format_real(r.err.e_g) << ',' << format_real(r.err.e_h) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Translation checks.  Sources fill the unit disk about the origin; the
// separation ratio s sets every distance in units of that radius.  L2L rows
// are measured against the parent local, the rest against direct sums.

namespace {

struct TranslationSetup {
  std::vector<PointSource> sources;
  SubstreamRng targets;
  double angle;
};

TranslationSetup make_setup(const TranslationConfig& cfg) {
  SubstreamRng rng(cfg.seed, 0, 0, StreamRole::Translation);
  TranslationSetup s{{}, SubstreamRng(cfg.seed, 1, 0, StreamRole::Translation), 0.0};
  for (int i = 0; i < cfg.n_sources; ++i) s.sources.push_back(random_source(rng, in_disk(rng, {0.0, 0.0}, 1.0)));
  s.angle = rng.uniform(-std::numbers::pi, std::numbers::pi);
  return s;
}

Vec2 at_angle(double r, double a) { return {r * std::cos(a), r * std::sin(a)}; }

Vec2 in_annulus(SubstreamRng& rng, const Vec2& c, double r0, double r1) {
  const double rho = rng.uniform(r0, r1);
  const double t = rng.uniform(-std::numbers::pi, std::numbers::pi);
  return {c[0] + rho * std::cos(t), c[1] + rho * std::sin(t)};
}

// Sources rescaled so that separate log and K_0 expansions recombine to
// synth_field: u = u_H - u_L.
std::vector<PointSource> split_weights(std::span<const PointSource> src, double lambda) {
  std::vector<PointSource> out(src.begin(), src.end());
  const double k = -1.0 / (2.0 * std::numbers::pi);
  for (PointSource& s : out) {
    s.charge *= k;
    s.dipole_weight *= k / lambda;
    s.quad_weight *= k / (lambda * lambda);
  }
  return out;
}

}  // namespace

std::vector<TranslationRow> translation_check(const TranslationConfig& cfg) {
  for (int p : cfg.orders) {
    if (p < 4) throw InvalidArgument("translation_check: orders must be >= 4");
  }
  for (double s : cfg.separation_ratios) {
    if (!(s > 1.0)) throw InvalidArgument("translation_check: separation ratio must exceed 1");
  }
  if (!(cfg.lambda > 0.0) || !(cfg.small_lambda_rho > 0.0)) throw InvalidArgument("lambda must be positive");

  TranslationSetup setup = make_setup(cfg);
  const auto& src = setup.sources;
  const double lam = cfg.lambda;
  const Vec2 origin{0.0, 0.0};
  const std::complex<double> zorigin(0.0, 0.0);
  auto cz = [](const Vec2& v) { return std::complex<double>(v[0], v[1]); };
  std::vector<TranslationRow> rows;

  for (double s : cfg.separation_ratios) {
    // M2M: shift by half the source radius, evaluate on s..s+1 times the new radius.
    const Vec2 mc = at_angle(0.5, setup.angle);
    const double r1 = 1.5;
    // M2L: local center at distance s, targets within the unit disk about it.
    const Vec2 lc = at_angle(s, setup.angle + 1.0);
    // L2L: child center half a unit from the local center, targets within 1/2.
    const Vec2 cc{lc[0] + 0.5 * std::cos(setup.angle), lc[1] + 0.5 * std::sin(setup.angle)};

    std::vector<Vec2> far, near, child;
    for (int i = 0; i < cfg.n_targets; ++i) {
      far.push_back(in_annulus(setup.targets, mc, s * r1, (s + 1.0) * r1));
      near.push_back(in_disk(setup.targets, lc, 1.0));
      child.push_back(in_disk(setup.targets, cc, 0.5));
    }

    for (int p : cfg.orders) {
      auto emit = [&](const std::string& op, double lrho, const MaxError& e) {
        rows.push_back({op, p, s, lrho, max_rel(e.ev, e.sv), max_rel(e.eg, e.sg)});
      };
      {
        const auto m = laplace_source_to_multipole(src, zorigin, p, 1.0);
        const auto m2 = laplace_m2m(m, cz(mc));
        const auto loc = laplace_m2l(m, cz(lc));
        const auto ch = laplace_l2l(loc, cz(cc));
        MaxError a, b, c;
        for (const Vec2& x : far) a.add(log_kernel_field(src, x), laplace_eval(m2, x));
        for (const Vec2& x : near) b.add(log_kernel_field(src, x), laplace_eval(loc, x));
        for (const Vec2& x : child) c.add(laplace_eval(loc, x), laplace_eval(ch, x));
        emit("laplace_m2m", 0.0, a);
        emit("laplace_m2l", 0.0, b);
        emit("laplace_l2l", 0.0, c);
      }
      {
        const auto m = mh_source_to_multipole(src, origin, lam, p, 1.0);
        const auto m2 = mh_m2m(m, mc);
        const auto loc = mh_m2l(m, lc);
        const auto ch = mh_l2l(loc, cc);
        MaxError a, b, c;
        for (const Vec2& x : far) a.add(mh_direct(src, lam, x), mh_eval(m2, x));
        for (const Vec2& x : near) b.add(mh_direct(src, lam, x), mh_eval(loc, x));
        for (const Vec2& x : child) c.add(mh_eval(loc, x), mh_eval(ch, x));
        emit("mh_m2m", lam * 0.5, a);
        emit("mh_m2l", lam * s, b);
        emit("mh_l2l", lam * 0.5, c);
      }
      {
        const auto m = mbh_source_to_multipole(src, origin, lam, p, 1.0);
        const auto m2 = mbh_m2m(m, mc);
        const auto loc = mbh_m2l(m, lc);
        const auto ch = mbh_l2l(loc, cc);
        MaxError a, b, c;
        for (const Vec2& x : far) a.add(synth_field(src, lam, x), mbh_eval_multipole(m2, x));
        for (const Vec2& x : near) b.add(synth_field(src, lam, x), mbh_eval_local(loc, x));
        for (const Vec2& x : child) c.add(mbh_eval_local(loc, x), mbh_eval_local(ch, x));
        emit("mbh_m2m", lam * 0.5, a);
        emit("mbh_m2l", lam * s, b);
        emit("mbh_l2l", lam * 0.5, c);
      }
      {
        // Small lambda: the stable M2L against separate log and K_0 locals.
        const double ls = cfg.small_lambda_rho / s;
        const auto loc = mbh_m2l(mbh_source_to_multipole(src, origin, ls, p, 1.0), lc);
        const auto w = split_weights(src, ls);
        const auto hl = mh_m2l(mh_source_to_multipole(w, origin, ls, p, 1.0), lc);
        const auto ll = laplace_m2l(laplace_source_to_multipole(w, zorigin, p, 1.0), cz(lc));
        MaxError a, b;
        for (const Vec2& x : near) {
          const FieldSample ex = synth_field(src, ls, x);
          a.add(ex, mbh_eval_local(loc, x));
          b.add(ex, mh_eval(hl, x) + laplace_eval(ll, x));
        }
        emit("mbh_m2l", cfg.small_lambda_rho, a);
        emit("split_m2l", cfg.small_lambda_rho, b);
      }
    }
  }
  return rows;
}

void write_translation_csv(std::ostream& os, const std::vector<TranslationRow>& rows) {
  os << "operator,p,separation_ratio,lambda_rho,max_rel_err_value,max_rel_err_gradient\n";
  for (const TranslationRow& r : rows) {
    os << r.op << ',' << r.p << ',' << format_real(r.separation_ratio) << ',' << format_real(r.lambda_rho) << ','
       << format_real(r.err_value) << ',' << format_real(r.err_gradient) << '\n';
  }
}

}  // namespace mbh
