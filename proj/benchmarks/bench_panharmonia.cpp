// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "panharmonia/means.hpp"
#include "panharmonia/specfun.hpp"
#include "panharmonia/wos.hpp"

using namespace panharmonia;

static void BM_BesselI(benchmark::State& state) {
  double z = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_i(HalfOrder(3), z));
    z = z < 50.0 ? z * 1.37 : 0.1;
  }
}
BENCHMARK(BM_BesselI);

static void BM_SphereCoeff(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(coeff(CoeffKind::sphere, m, t));
    t = t < 50.0 ? t * 1.37 : 0.1;
  }
}
BENCHMARK(BM_SphereCoeff)->Arg(2)->Arg(3)->Arg(7);

static void BM_SphereMean(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const ScalarField u = make_u_radial(m, 1.0);
  const Point x = Point::on_axis(m, 0.2);
  QuadratureConfig q;
  for (auto _ : state) benchmark::DoNotOptimize(sphere_mean(u, x, 0.5, q).value);
}
BENCHMARK(BM_SphereMean)->Arg(2)->Arg(3);

static void BM_WosWalks(benchmark::State& state) {
  const Domain b = Domain::ball(3, 1.0);
  const ScalarField g = make_constant(3, 1.0);
  WosConfig cfg;
  cfg.walks = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wos_solve(b, g, 1.0, Point{0.3, 0.1, -0.2}, cfg).estimate.value);
    ++cfg.seed;
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WosWalks)->Arg(10'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
