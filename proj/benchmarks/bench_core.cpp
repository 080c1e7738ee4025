#include <benchmark/benchmark.h>

#include <random>

#include "semiaut/ball_bumps.hpp"
#include "semiaut/bergman.hpp"
#include "semiaut/disc_map.hpp"
#include "semiaut/koebe.hpp"
#include "semiaut/mobius.hpp"

using namespace semiaut;

static void BM_MobiusCompose(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<MobiusMap> maps;
  for (int i = 0; i < 64; ++i) maps.push_back(MobiusMap::disc_automorphism(u(rng) * 6, {u(rng), u(rng)}));
  std::size_t i = 0;
  MobiusMap acc = MobiusMap::identity();
  for (auto _ : state) {
    acc = maps[i++ % maps.size()] * acc;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_MobiusCompose);

static void BM_DiscMapBuild(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Curve c = sample_fourier_curve(0.0, 1.0, {0.0, 0.1, 0.05}, {0.0, 0.0, 0.03}, n);
  for (auto _ : state) {
    DiscMap f(c, 0.1);
    benchmark::DoNotOptimize(f.residual());
  }
}
BENCHMARK(BM_DiscMapBuild)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_KoebeEccentricAnnulus(benchmark::State& state) {
  const auto d = SampledDomain::from_circle_domain(CircleDomain(Circle{}, {Circle{0.3, 0.2}}), -0.4, 256);
  for (auto _ : state) benchmark::DoNotOptimize(koebe_uniformize(d, 1e-10, 20).residual);
}
BENCHMARK(BM_KoebeEccentricAnnulus)->Unit(benchmark::kMillisecond);

static void BM_BergmanAssemble(benchmark::State& state) {
  const CircleDomain cd(Circle{}, {Circle{{0.45, 0.1}, 0.12}, Circle{{-0.3, -0.2}, 0.18}});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(BergmanModel::assemble(cd, n).condition_number());
}
BENCHMARK(BM_BergmanAssemble)->Arg(20)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

static void BM_BergmanMetric(benchmark::State& state) {
  const auto m = BergmanModel::assemble(CircleDomain::annulus(0.4), 60);
  for (auto _ : state) benchmark::DoNotOptimize(m.metric({0.7, 0.1}).curvature);
}
BENCHMARK(BM_BergmanMetric)->Unit(benchmark::kMicrosecond);

static void BM_StageDefiningValue(benchmark::State& state) {
  const DomainStage s{static_cast<int>(state.range(0)), 12};
  const PointC2 p{{0.3, 0.1}, {0.2, -0.4}};
  for (auto _ : state) benchmark::DoNotOptimize(stage_defining_value(s, p));
}
BENCHMARK(BM_StageDefiningValue)->Arg(1)->Arg(3)->Arg(6);
BENCHMARK_MAIN();
