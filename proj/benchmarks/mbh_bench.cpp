#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mbh/bessel.hpp"
#include "mbh/disk_solver.hpp"
#include "mbh/experiments.hpp"
#include "mbh/greens.hpp"
#include "mbh/mbh_expansion.hpp"
#include "mbh/stable_basis.hpp"

namespace {

std::vector<mbh::PointSource> sources(int count, mbh::Vec2 c, double r) {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<mbh::PointSource> out;
  for (int i = 0; i < count; ++i) {
    mbh::PointSource s;
    const double rho = r * std::sqrt(u(g)), t = 6.283185307179586 * u(g);
    s.location = {c[0] + rho * std::cos(t), c[1] + rho * std::sin(t)};
    s.charge = 2 * u(g) - 1;
    s.dipole_weight = u(g);
    s.quad_weight = u(g);
    out.push_back(s);
  }
  return out;
}

}  // namespace

static void BesselISequence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mbh::bessel_i_seq_x(n, 0.37));
}
BENCHMARK(BesselISequence)->Arg(10)->Arg(50)->Arg(200);

static void BesselKSequence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mbh::bessel_k_seq_x(n, 0.37));
}
BENCHMARK(BesselKSequence)->Arg(10)->Arg(50)->Arg(200);

static void ModeMatrixCondition(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mbh::mode_matrix(mbh::BasisTag::IntStable, 49, 0.5, 1e-6).normalized_condition());
  }
}
BENCHMARK(ModeMatrixCondition);

static void SynthField(benchmark::State& state) {
  const auto src = sources(static_cast<int>(state.range(0)), {3.0, 0.0}, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(mbh::synth_field(src, 0.7, {0.1, 0.2}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(SynthField)->RangeMultiplier(4)->Range(4, 256)->Complexity();

static void DiskSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto src = sources(20, {3.0, 0.0}, 0.5);
  const auto p = mbh::sample_problem(mbh::Side::Interior, 0.5, 1.0, n,
                                     [&](const mbh::Vec2& x) { return mbh::synth_field(src, 0.5, x); });
  for (auto _ : state) benchmark::DoNotOptimize(mbh::solve_dirichlet(p, mbh::BasisTag::IntStable));
  state.SetComplexityN(n);
}
BENCHMARK(DiskSolve)->RangeMultiplier(2)->Range(8, 256)->Complexity();

static void DiskEvaluate(benchmark::State& state) {
  const auto src = sources(20, {3.0, 0.0}, 0.5);
  const auto p = mbh::sample_problem(mbh::Side::Interior, 0.5, 1.0, 49,
                                     [&](const mbh::Vec2& x) { return mbh::synth_field(src, 0.5, x); });
  const auto sol = mbh::solve_dirichlet(p, mbh::BasisTag::IntStable);
  for (auto _ : state) benchmark::DoNotOptimize(mbh::eval_disk_solution(sol, {0.3, -0.4}));
}
BENCHMARK(DiskEvaluate);

static void MbhM2L(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto src = sources(20, {0.0, 0.0}, 1.0);
  const auto m = mbh::mbh_source_to_multipole(src, {0.0, 0.0}, 1.0, p, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(mbh::mbh_m2l(m, {3.0, 0.5}));
  state.SetComplexityN(p);
}
BENCHMARK(MbhM2L)->Arg(10)->Arg(20)->Arg(40)->Complexity();

static void ErrorSweepPoint(benchmark::State& state) {
  mbh::SweepConfig cfg;
  cfg.axis = mbh::SweepAxis::Radius;
  const auto pt = mbh::sweep_point(cfg, -20, 0);
  for (auto _ : state) benchmark::DoNotOptimize(mbh::error_point(cfg, pt));
}
BENCHMARK(ErrorSweepPoint)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
