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
#include "tetbiot/studies.hpp"

#include <cmath>
#include <stdexcept>

namespace tetbiot {

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("loglog_slope needs two or more (x, y) pairs");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::invalid_argument("loglog_slope needs positive values");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("loglog_slope: all x equal");
  return (n * sxy - sx * sy) / denom;
}

TetMesh hill_mesh(const HillVortex& hill, int cells) {
  return set_vorticity(ball_lattice_mesh(hill.radius, cells),
                       [&](const Vec3& p) { return hill_vorticity(p, hill); });
}

HillRun run_hill(const TetMesh& mesh, const HillVortex& hill, std::size_t n_points, int n_quad,
                 std::uint64_t seed, const EvalOptions& options) {
  const auto points = random_ball_points(n_points, 0.999 * hill.radius, seed);
  HillVortex at_rest = hill;
  at_rest.frame = HillFrame::fluid_at_rest;
  std::vector<Vec3> reference;
  reference.reserve(points.size());
  for (const auto& p : points) reference.push_back(hill_velocity(p, at_rest));

  const QuadFan fan = build_fan(n_quad, n_quad);
  const VelocityField field = evaluate(EvalRequest{mesh, points, {}, fan, options});

  HillRun run;
  run.nodes = mesh.node_count();
  run.tets = mesh.tet_count();
  run.n_quad = n_quad;
  run.workers = field.workers;
  run.stats = rms_error(field.velocities, reference, field.seconds);
  return run;
}

std::vector<RingPreset> ring_presets() {
  return {{"coarse", 1.0}, {"medium", 0.7}, {"fine", 0.5}};
}

TetMesh ring_mesh(const GaussianRing& ring, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("ring_mesh: h must be > 0");
  const double support = ring.support_radius();
  const double reach_xy = ring.radius + support + h;
  const double reach_z = support + h;
  const int nxy = static_cast<int>(std::ceil(2.0 * reach_xy / h));
  const int nz = static_cast<int>(std::ceil(2.0 * reach_z / h));
  // Offset keeps lattice planes off the ring axis and centre plane.
  const Vec3 offset{0.37 * h, 0.21 * h, 0.13 * h};
  const Vec3 half{0.5 * nxy * h, 0.5 * nxy * h, 0.5 * nz * h};
  const TetMesh box = lattice_mesh(offset - half, offset + half, {nxy, nxy, nz});

  const double support2 = support * support;
  const TetMesh core = select_tets(box, [&](const TetMesh& m, std::size_t t) {
    for (NodeIndex v : m.tets()[t].nodes) {
      const Vec3& p = m.nodes()[v];
      const double dr = std::hypot(p.x, p.y) - ring.radius;
      if (dr * dr + p.z * p.z < support2) return true;
    }
    return false;
  });
  return set_vorticity(core, [&](const Vec3& p) { return ring_vorticity(p, ring); });
}

RingVelocityTable ring_reference_table(const GaussianRing& ring) {
  return RingVelocityTable(ring, core_grid(ring, 3.5 * ring.core, ring.core / 24.0));
}

std::vector<RingRow> run_ring_study(const GaussianRing& ring, const RingVelocityTable& table,
                                    std::span<const RingPreset> presets,
                                    std::span<const int> quad_orders,
                                    std::span<const Vec3> points, const EvalOptions& options) {
  std::vector<Vec3> reference;
  reference.reserve(points.size());
  for (const auto& p : points) reference.push_back(table.velocity(p));

  std::vector<RingRow> rows;
  for (const auto& preset : presets) {
    const double h = preset.h_over_sigma * ring.core;
    const TetMesh mesh = ring_mesh(ring, h);
    for (int n : quad_orders) {
      const QuadFan fan = build_fan(n, n);
      const VelocityField field = evaluate(EvalRequest{mesh, points, {}, fan, options});
      rows.push_back({preset.name, h, n, mesh.tet_count(),
                      rms_error(field.velocities, reference, field.seconds)});
    }
  }
  return rows;
}

}  // namespace tetbiot
