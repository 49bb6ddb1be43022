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
// Test problems shared by the command-line tool, the acceptance suite and
// the benchmarks: meshes for Hill's vortex and the Gaussian ring, and the
// log-log fits used to read off convergence and scaling exponents.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tetbiot/mesh.hpp"
#include "tetbiot/reference_fields.hpp"
#include "tetbiot/solver.hpp"

namespace tetbiot {

/// Least-squares slope of log(y) against log(x). Throws
/// std::invalid_argument for fewer than two points, mismatched lengths or
/// non-positive values.
double loglog_slope(std::span<const double> x, std::span<const double> y);

// Hill's vortex -------------------------------------------------------------

/// Lattice cells per axis of the default Hill sphere (about 4300 nodes).
inline constexpr int kHillLatticeCells = 18;

/// Unit-radius lattice ball with Hill vorticity at the nodes (zero at nodes
/// outside the sphere).
TetMesh hill_mesh(const HillVortex& hill, int cells = kHillLatticeCells);

struct HillRun {
  std::size_t nodes = 0;
  std::size_t tets = 0;
  int n_quad = 0;
  int workers = 1;
  ErrorStats stats;
};

/// Evaluates at `n_points` uniform random points inside the sphere (radius
/// 0.999 a) with an n_quad x n_quad fan, compared with hill_velocity in the
/// rest-at-infinity frame.
HillRun run_hill(const TetMesh& mesh, const HillVortex& hill, std::size_t n_points, int n_quad,
                 std::uint64_t seed, const EvalOptions& options = {});

// Gaussian ring -------------------------------------------------------------

struct RingPreset {
  std::string name;
  double h_over_sigma;
};

/// Three resolutions, h = sigma, 0.7 sigma, 0.5 sigma.
std::vector<RingPreset> ring_presets();

/// Lattice of spacing h (offset by a fixed fraction of h so that no node
/// sits on the ring) restricted to tets with a node within the truncated
/// core, carrying the ring vorticity.
TetMesh ring_mesh(const GaussianRing& ring, double h);

/// Reference table covering 3.5 sigma around the core at spacing sigma/24.
RingVelocityTable ring_reference_table(const GaussianRing& ring);

struct RingRow {
  std::string resolution;
  double h = 0.0;
  int n_quad = 0;
  std::size_t tets = 0;
  ErrorStats stats;
};

/// One row per (preset, fan order): epsilon at the station points against
/// the table.
std::vector<RingRow> run_ring_study(const GaussianRing& ring, const RingVelocityTable& table,
                                    std::span<const RingPreset> presets,
                                    std::span<const int> quad_orders,
                                    std::span<const Vec3> points,
                                    const EvalOptions& options = {});

}  // namespace tetbiot
