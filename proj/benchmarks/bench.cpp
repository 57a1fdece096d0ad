#include <benchmark/benchmark.h>

#include "odesurf/expr.hpp"
#include "odesurf/numerics.hpp"
#include "odesurf/surface.hpp"

namespace {

using namespace odesurf;

const std::string kPhiText = "(1-3*x*u)/x^2";

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse(kPhiText));
}
BENCHMARK(BM_Parse);

void BM_Eval(benchmark::State& state) {
  Expr phi = parse(kPhiText);
  double x = 1.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval(phi, x, 0.25));
    x += 1e-9;
  }
}
BENCHMARK(BM_Eval);

void BM_Diff(benchmark::State& state) {
  Expr phi = parse(kPhiText);
  for (auto _ : state) benchmark::DoNotOptimize(diff(phi, Var::U));
}
BENCHMARK(BM_Diff);

void BM_Simplify(benchmark::State& state) {
  Expr k = curvature(parse(kPhiText), num(0.0));
  Expr raw = k * num(1.0) + num(0.0);
  for (auto _ : state) benchmark::DoNotOptimize(simplify(raw));
}
BENCHMARK(BM_Simplify);

void BM_Curvature(benchmark::State& state) {
  Expr phi = parse(kPhiText);
  Expr eps = parse("x+3*ln(x)");
  for (auto _ : state) benchmark::DoNotOptimize(curvature(phi, eps));
}
BENCHMARK(BM_Curvature);

void BM_SolveOde(benchmark::State& state) {
  OdeProblem p{parse(kPhiText), Region{1.0, 2.0, -1.0, 1.0}};
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_ode(p, 1.0, 0.5, 2.0, 1e-3));
}
BENCHMARK(BM_SolveOde);

void BM_Brioschi(benchmark::State& state) {
  OdeProblem p{parse(kPhiText), Region{1.0, 2.0, -1.0, 1.0}};
  SurfaceData s = build_surface(p, Deformation{parse("x+3*ln(x)")});
  for (auto _ : state)
    benchmark::DoNotOptimize(brioschi_curvature(s, 1.5, 0.2, 1e-3));
}
BENCHMARK(BM_Brioschi);

}  // namespace

BENCHMARK_MAIN();
