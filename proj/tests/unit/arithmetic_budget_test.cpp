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
#include <gtest/gtest.h>

#include <cstdint>
#include <cstdio>
#include <vector>

#include "test_support.hpp"
#include "traced_scalar.hpp"
#include "tetbiot/geometry.hpp"
#include "tetbiot/mesh.hpp"
#include "tetbiot/quadrature.hpp"
#include "tetbiot/solver.hpp"
#include "tetbiot/solver_kernel.hpp"

namespace tetbiot {
namespace {

using budget::Traced;

struct Case {
  TetMesh mesh;
  std::vector<Vec3> points;
  std::vector<NodeIndex> self;
};

Case make_case() {
  const TetMesh m = set_vorticity(lattice_mesh({-1, -1, -1}, {1, 1, 1}, {3, 3, 3}),
                                  [](const Vec3& p) {
                                    return Vec3{0.2 + p.y, 1.0 - p.z, 0.5 * p.x};
                                  });
  Case c{m, {}, {}};
  // Outside, inside and on a node (self-node path).
  c.points = {{2.5, 0.3, -0.7}, {0.11, -0.23, 0.31}, m.nodes()[21]};
  c.self = {kNoNode, kNoNode, 21};
  return c;
}

TEST(ArithmeticBudget, InnerLoopUsesNoTranscendentals) {
  const Case c = make_case();
  const QuadFan fan = build_fan(12, 12);

  const budget::TracedRun traced = budget::run_traced(c.mesh, c.points, c.self, fan);
  const budget::Counts seen = traced.counts;

  EXPECT_EQ(seen.transcendental, 0u);
  EXPECT_GT(seen.mul, 0u);

  // Divisions: at most one per face hit plus one per origin-straddling
  // segment, so at most five per ray-tet crossing.
  std::uint64_t crossings = 0;
  const kernel::MeshView<double> plain{c.mesh.nodes(), c.mesh.vorticity(), c.mesh.tets()};
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    for (std::size_t k = 0; k < fan.size(); ++k) {
      const Vec3 dir{fan.sx()[k], fan.sy()[k], fan.sz()[k]};
      for (const Tetra& tet : c.mesh.tets()) {
        const std::array<Vec3, 4> p{c.mesh.nodes()[tet.nodes[0]], c.mesh.nodes()[tet.nodes[1]],
                                    c.mesh.nodes()[tet.nodes[2]], c.mesh.nodes()[tet.nodes[3]]};
        const std::array<Vec3, 4> w{};
        if (ray_tet_intersect(Ray{c.points[i], dir}, p, w, tet.h2,
                              kernel::local_vertex(tet, c.self[i]))) {
          ++crossings;
        }
      }
    }
  }
  ASSERT_GT(crossings, 0u);
  EXPECT_GT(seen.div, 0u);
  EXPECT_LE(seen.div, 5 * crossings);
  std::printf("ray-tet crossings %llu, divisions %llu, multiplies %llu, adds %llu\n",
              static_cast<unsigned long long>(crossings),
              static_cast<unsigned long long>(seen.div),
              static_cast<unsigned long long>(seen.mul),
              static_cast<unsigned long long>(seen.add));

  // The traced run gives the same numbers as the double kernel.
  const kernel::FanView fv{fan.sx(), fan.sy(), fan.sz(), fan.weights(), fan.row_sin(),
                           fan.row_cos()};
  std::vector<Vec3> ref(c.points.size());
  kernel::accumulate_tets<double>(plain, 0, c.mesh.tet_count(), c.points, c.self, fv,
                                  std::nullopt, ref);
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(traced.velocities[i], ref[i]);
}

TEST(ArithmeticBudget, CountingTypeCatchesTranscendentals) {
  budget::counts = {};
  const Traced r = sqrt(Traced(4.0)) + atan(Traced(0.0));
  EXPECT_EQ(r.v, 2.0);
  EXPECT_EQ(budget::counts.transcendental, 2u);
}

}  // namespace
}  // namespace tetbiot
