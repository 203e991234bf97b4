#include <benchmark/benchmark.h>

#include <numbers>

#include "diffgeo/diffgeo.hpp"

using namespace diffgeo;

namespace {

constexpr double kPi = std::numbers::pi;

const ParametricSurface& torus() {
  static const ParametricSurface s = *make_shape("torus").surface;
  return s;
}

const ParametricCurve& helix() {
  static const ParametricCurve c = *make_shape("helix").curve;
  return c;
}

void BM_Frenet(benchmark::State& state) {
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(frenet(helix(), t));
    t += 1e-3;
  }
}
BENCHMARK(BM_Frenet);

void BM_Forms(benchmark::State& state) {
  double u = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(forms(torus(), u, 1.0));
    u += 1e-3;
  }
}
BENCHMARK(BM_Forms);

void BM_Curvatures(benchmark::State& state) {
  double u = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(curvatures(torus(), u, 1.0));
    u += 1e-3;
  }
}
BENCHMARK(BM_Curvatures);

void BM_IntrinsicGaussianCurvature(benchmark::State& state) {
  double u = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_curvature_intrinsic(torus(), u, 1.0));
    u += 1e-3;
  }
}
BENCHMARK(BM_IntrinsicGaussianCurvature);

void BM_ExprJet(benchmark::State& state) {
  const Expr e = parse_expression("sin(u)*exp(v) + u^3/(1 + v^2)").bind({"u", "v"});
  const std::array<Jet2<4>, 2> uv{Jet2<4>::variable_u(0.3), Jet2<4>::variable_v(0.7)};
  for (auto _ : state) benchmark::DoNotOptimize(e.evaluate(std::span<const Jet2<4>>(uv)));
}
BENCHMARK(BM_ExprJet);

void BM_GeodesicIvp(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(geodesic_ivp(torus(), {0.2, 1.0}, {1.0, 0.4}, 10.0));
}
BENCHMARK(BM_GeodesicIvp)->Unit(benchmark::kMillisecond);

void BM_Holonomy(benchmark::State& state) {
  const ParametricSurface sphere = *make_shape("sphere").surface;
  const auto loop = make_surface_curve(
      sphere, [](auto t) { return std::array<decltype(t), 2>{t, decltype(t)(0.5)}; }, {-kPi, kPi});
  for (auto _ : state) benchmark::DoNotOptimize(holonomy(loop, {1.0, 0.0}));
}
BENCHMARK(BM_Holonomy)->Unit(benchmark::kMillisecond);

void BM_TotalCurvature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(total_curvature(torus(), {{0, 2 * kPi}, {0, 2 * kPi}}));
}
BENCHMARK(BM_TotalCurvature)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
