//
//  tetbiot: Biot-Savart velocity evaluation on tetrahedral meshes.
//
//  Copyright 2026 The tetbiot Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.
//
#include <benchmark/benchmark.h>

#include <array>
#include <vector>

#include "tetbiot/geometry.hpp"
#include "tetbiot/mesh.hpp"
#include "tetbiot/quadrature.hpp"
#include "tetbiot/solver.hpp"
#include "tetbiot/studies.hpp"

namespace tetbiot {
namespace {

void BM_BuildFan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_fan(n, n));
}
BENCHMARK(BM_BuildFan)->Arg(4)->Arg(16)->Arg(64);

void BM_RayTet(benchmark::State& state) {
  const std::array<Vec3, 4> p{Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  const std::array<Vec3, 4> w{Vec3{0, 0, 1}, Vec3{0, 0, 1}, Vec3{0, 0, 1}, Vec3{0, 0, 1}};
  const Ray ray{{-1, 0.25, 0.25}, {1, 0, 0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ray_tet_intersect(ray, p, w, 2.0));
  }
}
BENCHMARK(BM_RayTet);

void BM_EvaluateHill(benchmark::State& state) {
  const HillVortex hill;
  static const TetMesh mesh = hill_mesh(hill);
  const std::vector<Vec3> points = random_ball_points(100, 0.999, 3);
  const int n = static_cast<int>(state.range(0));
  const QuadFan fan = build_fan(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(EvalRequest{mesh, points, {}, fan}));
  }
  const double pairs = static_cast<double>(mesh.tet_count() * points.size() * fan.size());
  state.counters["ray_tet_pairs/s"] =
      benchmark::Counter(pairs, benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_EvaluateHill)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace tetbiot

BENCHMARK_MAIN();
